#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "turbofan/atmosphere.hpp"
#include "turbofan/gasprops.hpp"

namespace turbofan {

struct EngineConfig {
    double pi_fan = 4.7;
    double pi_c = 6.0;
    double tit = 2175.0; // K
    double alpha = 0.57; // bypass ratio
    double eta_fan = 0.90;
    double eta_c = 0.85;
    double eta_hpt = 0.90;
    double eta_lpt = 0.91;
    double eta_cc = 0.995;
    double eta_n = 0.98;
    double dpcc_frac = 0.04; // fraction of P4 lost across the burner
    std::optional<double> design_mass_flow = 147.0; // kg/s, static fallback
    std::optional<double> intake_area;              // m^2
    bool fan_full_flow = false; // charge fan work on the full intake flow

    void validate() const; // throws ConfigError on violated invariants
};

struct FlightCondition {
    double mach = 0.0;
    double altitude = 0.0; // m
    double dt_iat = 0.0;   // K, negative = inlet-air cooling
};

struct StationState {
    int station = 0; // 0 ambient .. 9 nozzle exit
    double T = 0.0;  // K
    double P = 0.0;  // Pa
    double mdot = 0.0; // kg/s
};

struct CycleSolution {
    std::array<StationState, 10> stations{};
    double mdot_fuel = 0.0; // kg/s
    double V0 = 0.0;        // m/s
    double V9 = 0.0;        // m/s
    double thrust_kN = 0.0;
    double tsfc = 0.0;      // g/(kN s)
    double eta_th = 0.0;
    double eta_p = 0.0;
    double heat_rate_MW = 0.0;
    double W_fan_MW = 0.0;
    double W_hpc_MW = 0.0;
    double W_hpt_MW = 0.0;
    double W_lpt_MW = 0.0;

    // mass bookkeeping and gas states consumed by the exergy accounting
    double m_total = 0.0;
    double m_ah = 0.0;    // core stream
    double m_ac = 0.0;    // bypass stream
    double m_fan = 0.0;   // flow the fan work was charged on
    double m_T = 0.0;     // core + fuel
    double m_g = 0.0;     // mixed exhaust
    double far = 0.0;     // core fuel/air ratio
    double far_mix = 0.0; // diluted ratio after mixing
    double T9s = 0.0;     // isentropic nozzle exit temperature
    double cp_n = 0.0;    // nozzle-mean cp of the mixed gas
    double k_n = 0.0;
    double T0 = 0.0;
    double P0 = 0.0;
    std::string fuel_name;
};

using PropertyFn = std::function<double(double)>;

// Damped fixed-point driver shared by all station solvers: plain iteration
// with 0.5 under-relaxation when successive updates change sign, relative
// tolerance on the update. Throws SolverError on non-convergence.
double fixed_point(const PropertyFn& f, double x0, double tol = 1e-10,
                   int itmax = 200);

// Station primitives, parameterized on property callbacks so constant-property
// closed forms can drive them in tests.
double diffuser_exit_T(double T1, double mach, const PropertyFn& k_at_mean);
double compress_exit_T(double T_in, double pi, double eta,
                       const PropertyFn& k_at_mean);
double turbine_exit_T(double T_in, double W, double mdot,
                      const PropertyFn& cp_at_mean);
// Enthalpy-conserving mix temperature: solves inflow_enthalpy_rate =
// m_out * cp_out(T) * T for T.
double mix_exit_T(double inflow_enthalpy_rate, double m_out,
                  const PropertyFn& cp_out, double guess);
double nozzle_exit_velocity(double T8, double P8, double P9, double k,
                            double mw_g_per_mol, double eta_n);

// Full station chain: intake (with optional inlet-air temperature shift),
// diffuser, fan, compressor, burner, two turbines solved from the spool power
// balances, bypass mixer, fully expanded nozzle. Property evaluations use the
// arithmetic mean of each component's end temperatures, iterated to
// convergence; an outer pass repeats the chain until station temperatures are
// stationary. Pure function of its inputs.
CycleSolution solve_cycle(const EngineConfig& cfg, const FlightCondition& fc,
                          const Fuel& fuel);

// key = value text file mirroring the EngineConfig fields.
EngineConfig load_engine_config(const std::string& path);

} // namespace turbofan
