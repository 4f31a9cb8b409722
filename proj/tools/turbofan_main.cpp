#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "turbofan/atmosphere.hpp"
#include "turbofan/csv.hpp"
#include "turbofan/cycle.hpp"
#include "turbofan/errors.hpp"
#include "turbofan/exergy.hpp"
#include "turbofan/gasprops.hpp"
#include "turbofan/metrics.hpp"
#include "turbofan/surrogate.hpp"
#include "turbofan/sweep.hpp"

namespace tf = turbofan;

namespace {

constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_SOLVER = 3;
constexpr int EXIT_IO = 4;
constexpr int EXIT_THRESHOLD = 5;

struct SimulateArgs {
    std::string fuel;
    std::string config_path;
    std::string fuel_db;
    double mach = 0.0;
    double altitude = 0.0;
    double dt_iat = 0.0;
    bool report_exergy = false;
    std::string station_csv;
    std::string exergy_csv;
};

tf::FuelDb load_fuels(const std::string& extra) {
    tf::FuelDb db = tf::FuelDb::builtin();
    if (!extra.empty()) db.merge_file(extra);
    return db;
}

int cmd_simulate(const SimulateArgs& a) {
    tf::FuelDb db = load_fuels(a.fuel_db);
    tf::EngineConfig cfg;
    if (!a.config_path.empty()) cfg = tf::load_engine_config(a.config_path);
    tf::FlightCondition fc{a.mach, a.altitude, a.dt_iat};
    const tf::Fuel& fuel = db.get(a.fuel);
    tf::CycleSolution sol = tf::solve_cycle(cfg, fc, fuel);

    std::printf("fuel=%s mach=%g altitude_m=%g dt_iat_K=%g\n", a.fuel.c_str(),
                a.mach, a.altitude, a.dt_iat);
    std::printf("st   T_K           P_Pa             mdot_kg_s\n");
    for (const tf::StationState& st : sol.stations)
        std::printf("%2d   %-13.4f %-16.2f %.6f\n", st.station, st.T, st.P,
                    st.mdot);
    std::printf("thrust_kN        %.6f\n", sol.thrust_kN);
    std::printf("tsfc_g_per_kNs   %.6f\n", sol.tsfc);
    std::printf("mdot_fuel_kg_s   %.6f\n", sol.mdot_fuel);
    std::printf("eta_th           %.6f\n", sol.eta_th);
    std::printf("eta_p            %.6f\n", sol.eta_p);
    std::printf("V0_m_s           %.6f\n", sol.V0);
    std::printf("V9_m_s           %.6f\n", sol.V9);
    std::printf("heat_MW          %.6f\n", sol.heat_rate_MW);

    tf::ExergyReport ex;
    bool have_ex = a.report_exergy || !a.exergy_csv.empty();
    if (have_ex)
        ex = tf::component_exergy(sol, tf::isa_state(a.altitude), fuel);
    if (a.report_exergy) {
        std::printf("component  eta_ex     E_D_MW\n");
        for (const tf::ComponentExergy& c : ex.components) {
            if (c.eta_ex)
                std::printf("%-10s %.6f   %.6f\n", c.name.c_str(), *c.eta_ex,
                            c.E_D_MW);
            else
                std::printf("%-10s -          %.6f\n", c.name.c_str(),
                            c.E_D_MW);
        }
        std::printf("overall_eta_ex   %.6f\n", ex.overall_eta_ex);
        std::printf("fuel_exergy_MW   %.6f\n", ex.fuel_exergy_rate_MW);
    }

    if (!a.station_csv.empty()) {
        std::ostringstream out;
        out << "station,T_K,P_Pa,mdot_kg_s\n";
        for (const tf::StationState& st : sol.stations)
            out << st.station << ',' << tf::g17(st.T) << ',' << tf::g17(st.P)
                << ',' << tf::g17(st.mdot) << '\n';
        tf::write_file(a.station_csv, out.str());
    }
    if (!a.exergy_csv.empty()) {
        std::ostringstream out;
        out << "item,eta_ex,E_D_MW,E_x_MW\n";
        for (const tf::ComponentExergy& c : ex.components) {
            out << c.name << ',';
            if (c.eta_ex) out << tf::g17(*c.eta_ex);
            out << ',' << tf::g17(c.E_D_MW) << ",\n";
        }
        for (const auto& [st, E] : ex.station_exergy_MW)
            out << "station" << st << ",,," << tf::g17(E) << '\n';
        out << "overall," << tf::g17(ex.overall_eta_ex) << ",,\n";
        out << "fuel,,," << tf::g17(ex.fuel_exergy_rate_MW) << '\n';
        tf::write_file(a.exergy_csv, out.str());
    }
    return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out,
              const std::string& fuel_db) {
    tf::FuelDb db = load_fuels(fuel_db);
    tf::SweepSpec spec = tf::parse_sweep_spec(spec_path);
    std::vector<tf::SweepRow> rows = tf::run_sweep(spec, db);
    tf::write_sweep_csv(out, rows);
    std::size_t ok = 0;
    for (const tf::SweepRow& r : rows) ok += r.ok ? 1 : 0;
    std::printf("points=%zu ok=%zu failed=%zu\n", rows.size(), ok,
                rows.size() - ok);
    return 0;
}

int cmd_dataset(const std::string& out_dir, std::uint64_t seed, std::size_t n,
                const std::string& ranges_path) {
    tf::DatasetRanges ranges;
    if (!ranges_path.empty()) ranges = tf::load_dataset_ranges(ranges_path);
    std::fprintf(stderr, "sampling %zu points...\n", n);
    tf::Dataset ds = tf::gen_dataset(seed, n, ranges);
    tf::write_dataset(out_dir, ds);
    std::printf("n=%zu train=%zu test=%zu infeasible_redraws=%zu\n",
                ds.train.size() + ds.test.size(), ds.train.size(),
                ds.test.size(), ds.n_infeasible);
    return 0;
}

// Reads a dataset CSV: the leading n_inputs columns feed the network, the
// target column is picked by name.
void load_xy(const std::string& path, const std::string& target,
             std::size_t n_inputs, tf::DataMatrix* X, std::vector<double>* y,
             std::vector<std::string>* input_names = nullptr) {
    tf::Table t = tf::read_table(path);
    if (t.header.size() < n_inputs + 1)
        throw tf::ConfigError(path + ": too few columns");
    std::size_t tc = t.col(target);
    if (tc < n_inputs)
        throw tf::ConfigError(path + ": target overlaps the input columns");
    *X = tf::DataMatrix(t.rows.size(), n_inputs);
    y->resize(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < n_inputs; ++j)
            X->at(i, j) = tf::parse_double(t.rows[i][j]);
        (*y)[i] = tf::parse_double(t.rows[i][tc]);
    }
    if (input_names)
        input_names->assign(t.header.begin(), t.header.begin() + n_inputs);
}

std::vector<std::pair<double, double>> load_scaling(
    const std::string& path, const std::vector<std::string>& input_names) {
    tf::Table t = tf::read_table(path);
    std::size_t cc = t.col("column"), cmin = t.col("min"), cmax = t.col("max");
    std::vector<std::pair<double, double>> s;
    for (const std::string& name : input_names) {
        bool found = false;
        for (const auto& row : t.rows) {
            if (row[cc] == name) {
                s.emplace_back(tf::parse_double(row[cmin]),
                               tf::parse_double(row[cmax]));
                found = true;
                break;
            }
        }
        if (!found)
            throw tf::ConfigError(path + ": no scaling row for column '" +
                                  name + "'");
    }
    return s;
}

struct TrainArgs {
    std::string data;
    std::string target;
    std::string out;
    std::string norm;
    std::string loss_csv;
    std::uint64_t seed = 1;
    int epochs = 200;
    int batch = 64;
    double lr = 1e-3;
};

int cmd_train(const TrainArgs& a) {
    std::string norm = a.norm;
    if (norm.empty())
        norm = (std::filesystem::path(a.data).parent_path() /
                "normalization.csv")
                   .string();
    tf::DataMatrix X;
    std::vector<double> y;
    std::vector<std::string> input_names;
    load_xy(a.data, a.target, 5, &X, &y, &input_names);
    auto scaling = load_scaling(norm, input_names);

    tf::TrainConfig cfg;
    cfg.epochs = a.epochs;
    cfg.batch_size = a.batch;
    cfg.seed = a.seed;
    cfg.lr = a.lr;
    std::fprintf(stderr, "training %s on %zu samples, %d epochs\n",
                 a.target.c_str(), X.rows, a.epochs);
    tf::TrainResult res =
        tf::train(X, y, {5, 512, 256, 128, 1}, scaling, a.target, cfg);
    tf::save_model(a.out, res.model);

    if (!a.loss_csv.empty()) {
        std::ostringstream out;
        out << "epoch,train_mse\n";
        for (std::size_t e = 0; e < res.loss_history.size(); ++e)
            out << e << ',' << tf::g17(res.loss_history[e]) << '\n';
        tf::write_file(a.loss_csv, out.str());
    }
    std::printf("trained target=%s epochs=%d final_loss=%s\n",
                a.target.c_str(), a.epochs,
                tf::g17(res.loss_history.back()).c_str());
    return 0;
}

struct EvalArgs {
    std::string model;
    std::string data;
    std::string csv;
    std::optional<double> max_mape;
    std::optional<double> min_r;
};

int cmd_eval(const EvalArgs& a) {
    tf::MlpModel m = tf::load_model(a.model);
    tf::DataMatrix X;
    std::vector<double> y;
    std::vector<std::string> input_names;
    load_xy(a.data, m.target_name, m.input_scaling.size(), &X, &y,
            &input_names);

    tf::DataMatrix Xn(X.rows, X.cols);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) {
            auto [lo, hi] = m.input_scaling[j];
            Xn.at(i, j) = (X.at(i, j) - lo) / (hi - lo);
        }
    std::vector<double> yhat = tf::forward_batch(m, Xn);
    tf::EvalMetrics met = tf::evaluate(y, yhat);

    std::size_t within = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (std::abs((yhat[i] - y[i]) / y[i]) <= 0.01) ++within;
    double within_pct = 100.0 * static_cast<double>(within) /
                        static_cast<double>(y.size());

    std::printf("target=%s n=%zu\n", m.target_name.c_str(), met.n);
    std::printf("r=%s\n", met.r ? tf::g17(*met.r).c_str() : "nan");
    std::printf("r2=%s\n", met.r2 ? tf::g17(*met.r2).c_str() : "nan");
    std::printf("rmse=%s\n", tf::g17(met.rmse).c_str());
    std::printf("mse=%s\n", tf::g17(met.mse).c_str());
    std::printf("mae=%s\n", tf::g17(met.mae).c_str());
    std::printf("mape_percent=%s\n", tf::g17(met.mape_percent).c_str());
    std::printf("within_pm1_percent=%s\n", tf::g17(within_pct).c_str());

    if (!a.csv.empty()) {
        std::ostringstream out;
        for (const std::string& n : input_names) out << n << ',';
        out << "y,yhat\n";
        for (std::size_t i = 0; i < X.rows; ++i) {
            for (std::size_t j = 0; j < X.cols; ++j)
                out << tf::g17(X.at(i, j)) << ',';
            out << tf::g17(y[i]) << ',' << tf::g17(yhat[i]) << '\n';
        }
        tf::write_file(a.csv, out.str());
    }

    int rc = 0;
    if (a.max_mape && met.mape_percent > *a.max_mape) {
        std::fprintf(stderr, "MAPE %.4f%% exceeds limit %.4f%%\n",
                     met.mape_percent, *a.max_mape);
        rc = EXIT_THRESHOLD;
    }
    if (a.min_r && (!met.r || *met.r < *a.min_r)) {
        std::fprintf(stderr, "correlation below limit %.6f\n", *a.min_r);
        rc = EXIT_THRESHOLD;
    }
    return rc;
}

int cmd_validate(bool as_json) {
    tf::EngineConfig cfg; // reference engine
    tf::FlightCondition fc{0.0, 0.0, 0.0};
    tf::CycleSolution sol =
        tf::solve_cycle(cfg, fc, tf::fuel_lookup("JP10"));

    struct Row {
        const char* name;
        double got;
        double ref;
    };
    const double tol_pct = 8.0;
    Row rows[] = {
        {"thrust_kN", sol.thrust_kN, 118.580},
        {"tsfc_g_per_kNs", sol.tsfc, 26.43},
        {"mdot_fuel_kg_s", sol.mdot_fuel, 3.134},
    };
    bool all_ok = true;
    std::ostringstream js;
    js << "{\n";
    for (const Row& r : rows) {
        double diff = 100.0 * (r.got / r.ref - 1.0);
        bool ok = std::abs(diff) <= tol_pct;
        all_ok = all_ok && ok;
        if (as_json) {
            js << "  \"" << r.name << "\": {\"computed\": " << tf::g17(r.got)
               << ", \"reference\": " << tf::g17(r.ref)
               << ", \"rel_diff_percent\": " << tf::g17(diff)
               << ", \"pass\": " << (ok ? "true" : "false") << "},\n";
        } else {
            std::printf("%-16s computed=%-12.4f reference=%-10.4f "
                        "diff=%+.2f%% [%s]\n",
                        r.name, r.got, r.ref, diff, ok ? "PASS" : "FAIL");
        }
    }
    if (as_json) {
        js << "  \"tolerance_percent\": " << tf::g17(tol_pct) << ",\n";
        js << "  \"pass\": " << (all_ok ? "true" : "false") << "\n}\n";
        std::fputs(js.str().c_str(), stdout);
    } else {
        std::printf("verdict: %s (tolerance %.1f%%)\n",
                    all_ok ? "PASS" : "FAIL", tol_pct);
    }
    return all_ok ? 0 : EXIT_THRESHOLD;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-spool mixed-flow turbofan cycle and exergy toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "solve one operating point");
    simulate->add_option("--fuel", sim.fuel, "fuel name")->required();
    simulate->add_option("--config", sim.config_path, "engine config file");
    simulate->add_option("--fuel-db", sim.fuel_db, "extra fuels CSV");
    simulate->add_option("--mach", sim.mach, "flight Mach number")
        ->check(CLI::Range(0.0, 10.0));
    simulate->add_option("--altitude", sim.altitude, "altitude, m")
        ->check(CLI::Range(0.0, 47000.0));
    simulate->add_option("--dt-iat", sim.dt_iat,
                         "intake air temperature shift, K");
    simulate->add_flag("--report", sim.report_exergy,
                       "append the exergy breakdown");
    simulate->add_option("--csv", sim.station_csv, "write station CSV here");
    simulate->add_option("--exergy-csv", sim.exergy_csv,
                         "write exergy CSV here");

    std::string sweep_spec, sweep_out, sweep_db;
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--spec", sweep_spec, "sweep spec file")->required();
    sweep->add_option("--out", sweep_out, "output CSV")->required();
    sweep->add_option("--fuel-db", sweep_db, "extra fuels CSV");

    std::string ds_dir, ds_ranges;
    std::uint64_t ds_seed = 7;
    std::size_t ds_n = 7599;
    CLI::App* dataset =
        app.add_subcommand("dataset", "generate the surrogate dataset");
    dataset->add_option("--out-dir", ds_dir, "output directory")->required();
    dataset->add_option("--seed", ds_seed, "sampling seed");
    dataset->add_option("--n", ds_n, "number of samples")
        ->check(CLI::Range(std::size_t{5}, std::size_t{10000000}));
    dataset->add_option("--ranges", ds_ranges, "range override file");

    TrainArgs tr;
    CLI::App* train = app.add_subcommand("train", "fit a surrogate");
    train->add_option("--data", tr.data, "training CSV")->required();
    train->add_option("--target", tr.target, "target column")->required();
    train->add_option("--out", tr.out, "model output path")->required();
    train->add_option("--norm", tr.norm,
                      "normalization CSV (default: next to --data)");
    train->add_option("--loss-csv", tr.loss_csv, "write loss history here");
    train->add_option("--seed", tr.seed, "init/shuffle seed");
    train->add_option("--epochs", tr.epochs, "training epochs")
        ->check(CLI::Range(0, 1000000));
    train->add_option("--batch", tr.batch, "mini-batch size")
        ->check(CLI::Range(1, 1000000));
    train->add_option("--lr", tr.lr, "learning rate");

    EvalArgs ev;
    double ev_max_mape = 0.0, ev_min_r = 0.0;
    CLI::App* eval = app.add_subcommand("eval", "score a surrogate");
    eval->add_option("--model", ev.model, "model checkpoint")->required();
    eval->add_option("--data", ev.data, "evaluation CSV")->required();
    eval->add_option("--csv", ev.csv, "write predictions here");
    CLI::Option* omm =
        eval->add_option("--max-mape", ev_max_mape, "fail above this MAPE, %");
    CLI::Option* omr =
        eval->add_option("--min-r", ev_min_r, "fail below this correlation");

    bool val_json = false;
    CLI::App* validate = app.add_subcommand(
        "validate", "compare the reference engine against published data");
    validate->add_flag("--json", val_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_CONFIG;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_out, sweep_db);
        if (dataset->parsed())
            return cmd_dataset(ds_dir, ds_seed, ds_n, ds_ranges);
        if (train->parsed()) return cmd_train(tr);
        if (eval->parsed()) {
            if (*omm) ev.max_mape = ev_max_mape;
            if (*omr) ev.min_r = ev_min_r;
            return cmd_eval(ev);
        }
        if (validate->parsed()) return cmd_validate(val_json);
    } catch (const tf::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return EXIT_CONFIG;
    } catch (const tf::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return EXIT_IO;
    } catch (const tf::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return EXIT_SOLVER;
    }
    return 0;
}
