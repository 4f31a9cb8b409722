#include "turbofan/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "turbofan/csv.hpp"
#include "turbofan/errors.hpp"
#include "turbofan/rng.hpp"

namespace turbofan {

namespace {

const std::set<std::string> AXIS_NAMES = {"mach", "altitude", "dt_iat", "pi_c",
                                          "pi_fan", "tit", "alpha", "fuel"};

std::string sanitize_reason(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

} // namespace

SweepSpec parse_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    SweepSpec spec;
    std::string line;
    int lineno = 0;
    auto where = [&] { return path + ":" + std::to_string(lineno); };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where() + ": expected key = value");
        std::string key = strip(s.substr(0, eq));
        std::string val = strip(s.substr(eq + 1));
        if (key.rfind("axis ", 0) == 0) {
            SweepAxis ax;
            ax.name = strip(key.substr(5));
            if (!AXIS_NAMES.count(ax.name))
                throw ConfigError(where() + ": unknown axis '" + ax.name + "'");
            for (const std::string& v : split(val, ',')) {
                std::string t = strip(v);
                if (t.empty())
                    throw ConfigError(where() + ": empty axis value");
                ax.values.push_back(t);
            }
            if (ax.values.empty())
                throw ConfigError(where() + ": axis needs at least one value");
            spec.axes.push_back(std::move(ax));
        } else if (key == "fuel") {
            spec.base_fuel = val;
        } else if (key == "mach") {
            spec.base_fc.mach = parse_double(val);
        } else if (key == "altitude") {
            spec.base_fc.altitude = parse_double(val);
        } else if (key == "dt_iat") {
            spec.base_fc.dt_iat = parse_double(val);
        } else if (key == "max_points") {
            long long mp = parse_int(val);
            if (mp <= 0) throw ConfigError(where() + ": max_points must be > 0");
            spec.max_points = static_cast<std::size_t>(mp);
        } else if (key == "config") {
            std::filesystem::path p(val);
            if (p.is_relative())
                p = std::filesystem::path(path).parent_path() / p;
            spec.base_cfg = load_engine_config(p.string());
        } else {
            throw ConfigError(where() + ": unknown key '" + key + "'");
        }
    }
    return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const FuelDb& fuels) {
    // Fail fast on anything that is wrong for every point.
    fuels.get(spec.base_fuel);
    std::size_t total = 1;
    for (const auto& ax : spec.axes) {
        for (const std::string& v : ax.values) {
            if (ax.name == "fuel") fuels.get(v);
            else parse_double(v);
        }
        if (total > spec.max_points / ax.values.size())
            throw ConfigError("sweep exceeds max_points");
        total *= ax.values.size();
    }

    std::vector<SweepRow> rows;
    rows.reserve(total);
    std::vector<std::size_t> idx(spec.axes.size(), 0);
    for (std::size_t count = 0; count < total; ++count) {
        SweepRow row;
        row.mach = spec.base_fc.mach;
        row.altitude = spec.base_fc.altitude;
        row.dt_iat = spec.base_fc.dt_iat;
        row.fuel = spec.base_fuel;
        EngineConfig cfg = spec.base_cfg;
        row.pi_c = cfg.pi_c;
        row.pi_fan = cfg.pi_fan;
        row.tit = cfg.tit;
        row.alpha = cfg.alpha;
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            const std::string& v = spec.axes[a].values[idx[a]];
            const std::string& name = spec.axes[a].name;
            if (name == "fuel") row.fuel = v;
            else if (name == "mach") row.mach = parse_double(v);
            else if (name == "altitude") row.altitude = parse_double(v);
            else if (name == "dt_iat") row.dt_iat = parse_double(v);
            else if (name == "pi_c") row.pi_c = parse_double(v);
            else if (name == "pi_fan") row.pi_fan = parse_double(v);
            else if (name == "tit") row.tit = parse_double(v);
            else if (name == "alpha") row.alpha = parse_double(v);
        }
        cfg.pi_c = row.pi_c;
        cfg.pi_fan = row.pi_fan;
        cfg.tit = row.tit;
        cfg.alpha = row.alpha;
        FlightCondition fc{row.mach, row.altitude, row.dt_iat};
        try {
            const Fuel& fuel = fuels.get(row.fuel);
            row.sol = solve_cycle(cfg, fc, fuel);
            row.ex = component_exergy(row.sol, isa_state(fc.altitude), fuel);
            row.ok = true;
        } catch (const Error& e) {
            row.ok = false;
            row.reason = sanitize_reason(e.what());
        }
        rows.push_back(std::move(row));

        // odometer, last axis fastest
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            if (++idx[a] < spec.axes[a].values.size()) break;
            idx[a] = 0;
        }
        if (spec.axes.empty()) break;
    }
    return rows;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
    static const char* comp_names[] = {"fan", "hpc",   "cc",    "hpt",
                                       "lpt", "mixer", "nozzle"};
    std::ostringstream out;
    out << "mach,altitude_m,dt_iat_K,fuel,pi_c,pi_fan,tit_K,alpha,ok,reason,"
           "thrust_kN,tsfc_g_per_kNs,mdot_total_kg_s,mdot_fuel_kg_s,eta_th,"
           "eta_p,eta_ex_overall";
    for (const char* c : comp_names) out << ",eta_ex_" << c;
    for (const char* c : comp_names) out << ",E_D_" << c << "_MW";
    out << ",fuel_exergy_MW\n";
    for (const SweepRow& r : rows) {
        out << g17(r.mach) << ',' << g17(r.altitude) << ',' << g17(r.dt_iat)
            << ',' << r.fuel << ',' << g17(r.pi_c) << ',' << g17(r.pi_fan)
            << ',' << g17(r.tit) << ',' << g17(r.alpha) << ','
            << (r.ok ? 1 : 0) << ',' << r.reason;
        if (r.ok) {
            out << ',' << g17(r.sol.thrust_kN) << ',' << g17(r.sol.tsfc) << ','
                << g17(r.sol.m_total) << ',' << g17(r.sol.mdot_fuel) << ','
                << g17(r.sol.eta_th) << ',' << g17(r.sol.eta_p) << ','
                << g17(r.ex.overall_eta_ex);
            for (const auto& c : r.ex.components) {
                out << ',';
                if (c.eta_ex) out << g17(*c.eta_ex);
            }
            for (const auto& c : r.ex.components) out << ',' << g17(c.E_D_MW);
            out << ',' << g17(r.ex.fuel_exergy_rate_MW);
        } else {
            for (int i = 0; i < 22; ++i) out << ',';
        }
        out << '\n';
    }
    write_file(path, out.str());
}

DatasetRanges load_dataset_ranges(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    DatasetRanges r;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected name = lo, hi");
        std::string key = strip(s.substr(0, eq));
        std::vector<std::string> parts = split(s.substr(eq + 1), ',');
        if (parts.size() != 2)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected two comma-separated bounds");
        double lo = parse_double(strip(parts[0]));
        double hi = parse_double(strip(parts[1]));
        if (!(lo < hi))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": bounds must satisfy lo < hi");
        if (key == "pi_c") r.pi_c = {lo, hi};
        else if (key == "pi_fan") r.pi_fan = {lo, hi};
        else if (key == "tit") r.tit = {lo, hi};
        else if (key == "dt_iat") r.dt_iat = {lo, hi};
        else if (key == "alpha") r.alpha = {lo, hi};
        else throw ConfigError(path + ":" + std::to_string(lineno) +
                               ": unknown range '" + key + "'");
    }
    return r;
}

const char* const DATASET_HEADER =
    "pi_c,pi_fan,tit_K,dt_iat_K,alpha,thrust_kN,tsfc_g_per_kNs,eta_ex";

namespace {

struct SolvedPoint {
    DatasetRow row;
    bool ok;
};

SolvedPoint try_point(const std::array<double, 5>& x, const EngineConfig& base,
                      const Fuel& fuel, const AmbientState& dead) {
    EngineConfig cfg = base;
    cfg.pi_c = x[0];
    cfg.pi_fan = x[1];
    cfg.tit = x[2];
    cfg.alpha = x[4];
    FlightCondition fc{2.5, 30000.0, x[3]};
    SolvedPoint p{};
    try {
        CycleSolution sol = solve_cycle(cfg, fc, fuel);
        if (!(sol.thrust_kN > 0.0)) return p;
        ExergyReport ex = component_exergy(sol, dead, fuel);
        p.row = {x[0], x[1], x[2], x[3], x[4],
                 sol.thrust_kN, sol.tsfc, ex.overall_eta_ex};
        p.ok = true;
    } catch (const Error&) {
        p.ok = false;
    }
    return p;
}

} // namespace

Dataset gen_dataset(std::uint64_t seed, std::size_t n,
                    const DatasetRanges& ranges, const EngineConfig& base) {
    if (n < 5) throw ConfigError("dataset needs at least 5 samples");
    const std::array<std::array<double, 2>, 5> R = {
        ranges.pi_c, ranges.pi_fan, ranges.tit, ranges.dt_iat, ranges.alpha};
    const Fuel& fuel = fuel_lookup("Hydrogen");
    const AmbientState dead = isa_state(30000.0);

    rng::Engine g(seed);

    // Latin-hypercube columns: one stratum per sample, jittered within it.
    std::vector<std::array<double, 5>> pts(n);
    for (std::size_t d = 0; d < 5; ++d) {
        std::vector<std::size_t> perm = rng::permutation(g, n);
        for (std::size_t i = 0; i < n; ++i) {
            double u = rng::uniform01(g);
            pts[i][d] = R[d][0] + (R[d][1] - R[d][0]) *
                                      (static_cast<double>(perm[i]) + u) /
                                      static_cast<double>(n);
        }
    }

    Dataset ds;
    std::vector<DatasetRow> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::array<double, 5> x = pts[i];
        SolvedPoint p = try_point(x, base, fuel, dead);
        std::size_t redraws = 0;
        while (!p.ok) {
            ++ds.n_infeasible;
            if (++redraws > 1000)
                throw SolverError("dataset region looks mostly infeasible");
            for (std::size_t d = 0; d < 5; ++d)
                x[d] = R[d][0] + (R[d][1] - R[d][0]) * rng::uniform01(g);
            p = try_point(x, base, fuel, dead);
        }
        rows.push_back(p.row);
    }

    for (std::size_t c = 0; c < 8; ++c) {
        ds.col_min[c] = rows[0][c];
        ds.col_max[c] = rows[0][c];
        for (const DatasetRow& r : rows) {
            ds.col_min[c] = std::min(ds.col_min[c], r[c]);
            ds.col_max[c] = std::max(ds.col_max[c], r[c]);
        }
    }

    std::vector<std::size_t> order = rng::permutation(g, n);
    std::size_t ntr = dataset_train_count(n);
    ds.train.reserve(ntr);
    ds.test.reserve(n - ntr);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < ntr) ds.train.push_back(rows[order[i]]);
        else ds.test.push_back(rows[order[i]]);
    }
    return ds;
}

void write_dataset(const std::string& dir, const Dataset& ds) {
    std::filesystem::create_directories(dir);
    auto dump = [&](const std::string& name,
                    const std::vector<DatasetRow>& rows) {
        std::ostringstream out;
        out << DATASET_HEADER << '\n';
        for (const DatasetRow& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c)
                out << (c ? "," : "") << g17(r[c]);
            out << '\n';
        }
        write_file((std::filesystem::path(dir) / name).string(), out.str());
    };
    dump("train.csv", ds.train);
    dump("test.csv", ds.test);

    std::ostringstream out;
    out << "column,min,max\n";
    std::vector<std::string> cols = split(DATASET_HEADER, ',');
    for (std::size_t c = 0; c < 8; ++c)
        out << cols[c] << ',' << g17(ds.col_min[c]) << ','
            << g17(ds.col_max[c]) << '\n';
    write_file((std::filesystem::path(dir) / "normalization.csv").string(),
               out.str());
}

} // namespace turbofan
