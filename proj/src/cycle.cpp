#include "turbofan/cycle.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "turbofan/constants.hpp"
#include "turbofan/csv.hpp"
#include "turbofan/errors.hpp"

namespace turbofan {

namespace {

// Reference capture rho*V at sea level / Mach 0.8 used to scale the design
// mass flow when no intake area is given.
double rho_ref_v() {
    static const double v = (101325.0 / (R_AIR * 288.15)) * 0.8 *
                            std::sqrt(k_air(288.15) * R_AIR * 288.15);
    return v;
}

} // namespace

void EngineConfig::validate() const {
    if (!(pi_fan > 1.0) || !(pi_c > 1.0))
        throw ConfigError("pressure ratios must be > 1");
    for (double e : {eta_fan, eta_c, eta_hpt, eta_lpt, eta_cc, eta_n})
        if (!(e > 0.0 && e <= 1.0))
            throw ConfigError("efficiencies must lie in (0, 1]");
    if (!(alpha >= 0.0)) throw ConfigError("bypass ratio must be >= 0");
    if (!(dpcc_frac >= 0.0 && dpcc_frac < 0.2))
        throw ConfigError("burner pressure-loss fraction must lie in [0, 0.2)");
    if (!(tit > 0.0)) throw ConfigError("turbine inlet temperature must be > 0");
    if (design_mass_flow && !(*design_mass_flow > 0.0))
        throw ConfigError("design mass flow must be > 0");
    if (intake_area && !(*intake_area > 0.0))
        throw ConfigError("intake area must be > 0");
}

double fixed_point(const PropertyFn& f, double x0, double tol, int itmax) {
    double x = x0;
    double prev_delta = 0.0;
    for (int i = 0; i < itmax; ++i) {
        double xn = f(x);
        double d = xn - x;
        if (std::abs(d) <= tol * std::max(1.0, std::abs(x))) return xn;
        if (i > 0 && d * prev_delta < 0.0) xn = 0.5 * (x + xn);
        prev_delta = d;
        x = xn;
    }
    throw SolverError("fixed-point iteration did not converge");
}

double diffuser_exit_T(double T1, double mach, const PropertyFn& k_at_mean) {
    auto f = [&](double T2) {
        double k = k_at_mean(0.5 * (T1 + T2));
        return T1 * (1.0 + 0.5 * (k - 1.0) * mach * mach);
    };
    return fixed_point(f, T1 * (1.0 + 0.2 * mach * mach));
}

double compress_exit_T(double T_in, double pi, double eta,
                       const PropertyFn& k_at_mean) {
    auto f = [&](double T_out) {
        double k = k_at_mean(0.5 * (T_in + T_out));
        return T_in + (T_in / eta) * (std::pow(pi, (k - 1.0) / k) - 1.0);
    };
    return fixed_point(f, T_in * 1.4);
}

double turbine_exit_T(double T_in, double W, double mdot,
                      const PropertyFn& cp_at_mean) {
    auto f = [&](double T_out) {
        double cp = cp_at_mean(0.5 * (T_in + T_out));
        return T_in - W / (mdot * cp);
    };
    double T = fixed_point(f, T_in - 200.0);
    if (!(T > 0.0)) throw SolverError("turbine exit temperature not positive");
    return T;
}

double mix_exit_T(double inflow_enthalpy_rate, double m_out,
                  const PropertyFn& cp_out, double guess) {
    auto f = [&](double T) { return inflow_enthalpy_rate / (m_out * cp_out(T)); };
    return fixed_point(f, guess);
}

double nozzle_exit_velocity(double T8, double P8, double P9, double k,
                            double mw_g_per_mol, double eta_n) {
    double cp = k / (k - 1.0) * R_U * 1000.0 / mw_g_per_mol;
    double ex_term = 1.0 - std::pow(P9 / P8, (k - 1.0) / k);
    return std::sqrt(2.0 * eta_n * cp * T8 * ex_term);
}

namespace {

struct ChainResult {
    CycleSolution sol;
    std::array<double, 10> T{};
};

ChainResult run_chain(const EngineConfig& cfg, const FlightCondition& fc,
                      const Fuel& fuel, const AmbientState& amb) {
    const double T0 = amb.T0;
    const double P0 = amb.P0;
    const double mach = fc.mach;

    double V0 = mach * std::sqrt(k_air(T0) * R_AIR * T0);
    double T1 = T0 + fc.dt_iat;
    double P1 = P0;
    double rho1 = P1 / (R_AIR * T1);

    double m_tot;
    if (V0 == 0.0) {
        if (!cfg.design_mass_flow)
            throw ConfigError(
                "static condition needs a design mass flow or intake area");
        m_tot = *cfg.design_mass_flow;
    } else if (cfg.intake_area) {
        m_tot = rho1 * V0 * *cfg.intake_area;
    } else if (cfg.design_mass_flow) {
        m_tot = *cfg.design_mass_flow * (rho1 * V0) / rho_ref_v();
    } else {
        throw ConfigError("need a design mass flow or intake area");
    }
    double m_ah = m_tot / (cfg.alpha + 1.0);
    double m_ac = m_tot - m_ah;

    auto k_air_fn = [](double T) { return k_air(T); };

    // diffuser
    double T2 = diffuser_exit_T(T1, mach, k_air_fn);
    double k_d = k_air(0.5 * (T1 + T2));
    double P2 = P1 * std::pow(T2 / T1, k_d / (k_d - 1.0));

    // fan
    double T3 = compress_exit_T(T2, cfg.pi_fan, cfg.eta_fan, k_air_fn);
    double P3 = cfg.pi_fan * P2;
    double cp_f = cp_air(0.5 * (T2 + T3));
    double m_fan = cfg.fan_full_flow ? m_tot : m_ac;
    double W_fan = m_fan * cp_f * (T3 - T2);

    // compressor
    double T4 = compress_exit_T(T3, cfg.pi_c, cfg.eta_c, k_air_fn);
    double P4 = cfg.pi_c * P3;
    double cp_c = cp_air(0.5 * (T3 + T4));
    double W_hpc = m_ah * cp_c * (T4 - T3);

    // burner: exit temperature pinned at TIT, fuel flow closed with cp of the
    // products evaluated at the mean burner temperature
    double T5 = cfg.tit;
    if (T5 <= T4)
        throw SolverError("infeasible cycle: turbine inlet temperature " +
                          g17(T5) + " K does not exceed burner inlet " +
                          g17(T4) + " K");
    double P5 = P4 * (1.0 - cfg.dpcc_frac);
    auto f_far = [&](double far) {
        double cav = cp_gas(0.5 * (T4 + T5), GasModel::burned(fuel, far));
        double mf = m_ah * cav * (T5 - T4) / (fuel.fhv * cfg.eta_cc);
        return mf / m_ah;
    };
    double far = fixed_point(f_far, 0.02, 1e-12);
    double m_f = far * m_ah;
    double Qh = m_f * fuel.fhv * cfg.eta_cc;
    double m_T = m_ah + m_f;
    GasModel gc = GasModel::burned(fuel, far);

    // high-pressure turbine from the compressor spool balance
    auto cp_core = [&](double T) { return cp_gas(T, gc); };
    double T6 = turbine_exit_T(T5, W_hpc, m_T, cp_core);
    double k_t = k_gas(0.5 * (T5 + T6), gc);
    double P6 = P5 * std::pow(1.0 - (1.0 - T6 / T5) / cfg.eta_hpt,
                              k_t / (k_t - 1.0));

    // low-pressure turbine from the fan spool balance
    double T7 = turbine_exit_T(T6, W_fan, m_T, cp_core);
    double k_l = k_gas(0.5 * (T6 + T7), gc);
    double P7 = P6 * std::pow(1.0 - (1.0 - T7 / T6) / cfg.eta_lpt,
                              k_l / (k_l - 1.0));

    // mixer
    double m_g = m_ah + m_ac + m_f;
    double far_mix = m_f / (m_ah + m_ac);
    GasModel gm = GasModel::burned(fuel, far_mix);
    double cp7 = cp_gas(T7, gc);
    double cp3 = cp_air(T3);
    double h_in = m_T * cp7 * T7 + m_ac * cp3 * T3;
    double T8 = mix_exit_T(
        h_in, m_g, [&](double T) { return cp_gas(T, gm); }, 0.5 * (T7 + T3));
    double P8 = (m_T * P7 + m_ac * P3) / m_g;

    // fully expanded nozzle
    if (P8 <= P0)
        throw SolverError("no expansion: mixed pressure does not exceed ambient");
    double P9 = P0;
    double pr = P9 / P8;
    auto f_T9 = [&](double T9) {
        double k = k_gas(0.5 * (T8 + T9), gm);
        return T8 * (1.0 - cfg.eta_n * (1.0 - std::pow(pr, (k - 1.0) / k)));
    };
    double T9 = fixed_point(f_T9, T8 * 0.6);
    double k_n = k_gas(0.5 * (T8 + T9), gm);
    double cp_n = k_n / (k_n - 1.0) * r_gas(gm);
    double V9 = nozzle_exit_velocity(T8, P8, P9, k_n, mw_products(gm), cfg.eta_n);

    double F = m_g * (V9 - V0);
    double KE = 0.5 * m_g * (V9 * V9 - V0 * V0);

    ChainResult r;
    CycleSolution& s = r.sol;
    s.stations[0] = {0, T0, P0, m_tot};
    s.stations[1] = {1, T1, P1, m_tot};
    s.stations[2] = {2, T2, P2, m_tot};
    s.stations[3] = {3, T3, P3, m_tot};
    s.stations[4] = {4, T4, P4, m_ah};
    s.stations[5] = {5, T5, P5, m_T};
    s.stations[6] = {6, T6, P6, m_T};
    s.stations[7] = {7, T7, P7, m_T};
    s.stations[8] = {8, T8, P8, m_g};
    s.stations[9] = {9, T9, P9, m_g};
    s.mdot_fuel = m_f;
    s.V0 = V0;
    s.V9 = V9;
    s.thrust_kN = F / 1000.0;
    s.tsfc = m_f * 1000.0 / (F / 1000.0);
    s.eta_th = KE / (m_f * fuel.fhv);
    s.eta_p = (KE > 0.0 && V0 > 0.0) ? F * V0 / KE : 0.0;
    s.heat_rate_MW = Qh / 1e6;
    s.W_fan_MW = W_fan / 1e6;
    s.W_hpc_MW = W_hpc / 1e6;
    s.W_hpt_MW = W_hpc / 1e6; // spool balance
    s.W_lpt_MW = W_fan / 1e6;
    s.m_total = m_tot;
    s.m_ah = m_ah;
    s.m_ac = m_ac;
    s.m_fan = m_fan;
    s.m_T = m_T;
    s.m_g = m_g;
    s.far = far;
    s.far_mix = far_mix;
    s.T9s = T8 * std::pow(pr, (k_n - 1.0) / k_n);
    s.cp_n = cp_n;
    s.k_n = k_n;
    s.T0 = T0;
    s.P0 = P0;
    s.fuel_name = fuel.name;

    r.T = {T0, T1, T2, T3, T4, T5, T6, T7, T8, T9};
    return r;
}

} // namespace

CycleSolution solve_cycle(const EngineConfig& cfg, const FlightCondition& fc,
                          const Fuel& fuel) {
    cfg.validate();
    if (!(fc.mach >= 0.0)) throw ConfigError("mach must be >= 0");
    AmbientState amb = isa_state(fc.altitude);

    // Outer pass over the station chain until every station temperature is
    // stationary; the per-component solvers converge their own property
    // evaluations, so this settles immediately, but the contract is checked
    // rather than assumed.
    constexpr double outer_tol_K = 1e-6;
    constexpr int outer_itmax = 200;
    ChainResult prev = run_chain(cfg, fc, fuel, amb);
    for (int i = 0; i < outer_itmax; ++i) {
        ChainResult next = run_chain(cfg, fc, fuel, amb);
        double dmax = 0.0;
        for (std::size_t j = 0; j < next.T.size(); ++j)
            dmax = std::max(dmax, std::abs(next.T[j] - prev.T[j]));
        prev = next;
        if (dmax < outer_tol_K) return prev.sol;
    }
    throw SolverError("station temperatures did not settle");
}

EngineConfig load_engine_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    EngineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = strip(s.substr(0, eq));
        std::string val = strip(s.substr(eq + 1));
        if (key == "pi_fan") cfg.pi_fan = parse_double(val);
        else if (key == "pi_c") cfg.pi_c = parse_double(val);
        else if (key == "tit_K") cfg.tit = parse_double(val);
        else if (key == "alpha") cfg.alpha = parse_double(val);
        else if (key == "eta_fan") cfg.eta_fan = parse_double(val);
        else if (key == "eta_c") cfg.eta_c = parse_double(val);
        else if (key == "eta_hpt") cfg.eta_hpt = parse_double(val);
        else if (key == "eta_lpt") cfg.eta_lpt = parse_double(val);
        else if (key == "eta_cc") cfg.eta_cc = parse_double(val);
        else if (key == "eta_n") cfg.eta_n = parse_double(val);
        else if (key == "dpcc_frac") cfg.dpcc_frac = parse_double(val);
        else if (key == "design_mass_flow_kg_s")
            cfg.design_mass_flow = parse_double(val);
        else if (key == "intake_area_m2") cfg.intake_area = parse_double(val);
        else if (key == "fan_full_flow") {
            if (val == "true" || val == "1") cfg.fan_full_flow = true;
            else if (val == "false" || val == "0") cfg.fan_full_flow = false;
            else throw ConfigError(path + ":" + std::to_string(lineno) +
                                   ": fan_full_flow must be true or false");
        } else {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

} // namespace turbofan
