#include "turbofan/exergy.hpp"

#include <cmath>

namespace turbofan {

double physical_exergy(double T, double P, const AmbientState& dead,
                       const GasModel& gas) {
    double cp = cp_gas(0.5 * (T + dead.T0), gas);
    return cp * (T - dead.T0) -
           dead.T0 * (cp * std::log(T / dead.T0) -
                      r_gas(gas) * std::log(P / dead.P0));
}

double exergy_flow(double mdot, double e_J_per_kg) {
    return mdot * e_J_per_kg / 1e6;
}

double fuel_exergy_rate(double mdot_fuel, const Fuel& fuel) {
    return mdot_fuel * fuel.chem_exergy / 1e6;
}

ExergyReport component_exergy(const CycleSolution& sol,
                              const AmbientState& dead, const Fuel& fuel) {
    GasModel gc = GasModel::burned(fuel, sol.far);
    GasModel gm = GasModel::burned(fuel, sol.far_mix);
    GasModel air = GasModel::air();

    auto e = [&](const StationState& st, const GasModel& g) {
        return physical_exergy(st.T, st.P, dead, g);
    };
    const auto& st = sol.stations;

    double W_fan = sol.W_fan_MW * 1e6;
    double W_hpc = sol.W_hpc_MW * 1e6;

    ExergyReport rep;
    auto add = [&](const std::string& name, double num, double den,
                   double E_D) {
        ComponentExergy c;
        c.name = name;
        if (den != 0.0) c.eta_ex = num / den;
        c.E_D_MW = E_D / 1e6;
        rep.components.push_back(c);
    };

    double dE = sol.m_fan * (e(st[3], air) - e(st[2], air));
    add("fan", dE, W_fan, W_fan - dE);

    dE = sol.m_ah * (e(st[4], air) - e(st[3], air));
    add("hpc", dE, W_hpc, W_hpc - dE);

    double E4 = sol.m_ah * e(st[4], air);
    double E5 = sol.m_T * e(st[5], gc);
    double Ef = sol.mdot_fuel * fuel.chem_exergy;
    add("cc", E5, E4 + Ef, E4 + Ef - E5);

    dE = sol.m_T * (e(st[5], gc) - e(st[6], gc));
    add("hpt", W_hpc, dE, dE - W_hpc);

    dE = sol.m_T * (e(st[6], gc) - e(st[7], gc));
    add("lpt", W_fan, dE, dE - W_fan);

    double E3b = sol.m_ac * e(st[3], air);
    double E7 = sol.m_T * e(st[7], gc);
    double E8 = sol.m_g * e(st[8], gm);
    add("mixer", E8, E3b + E7, E3b + E7 - E8);

    // Entropy generated across the expansion; charging it against the inlet
    // stream keeps the jet kinetic energy inside the exit exergy.
    double sgen = sol.cp_n * std::log(st[9].T / sol.T9s);
    double EDn = sol.m_g * dead.T0 * sgen;
    add("nozzle", E8 - EDn, E8, EDn);

    rep.fuel_exergy_rate_MW = fuel_exergy_rate(sol.mdot_fuel, fuel);
    rep.overall_eta_ex =
        (sol.thrust_kN * 1000.0) * sol.V0 / (sol.mdot_fuel * fuel.chem_exergy);

    rep.station_exergy_MW = {
        {1, exergy_flow(sol.m_total, e(st[1], air))},
        {2, exergy_flow(sol.m_total, e(st[2], air))},
        {3, exergy_flow(sol.m_total, e(st[3], air))},
        {4, exergy_flow(sol.m_ah, e(st[4], air))},
        {5, exergy_flow(sol.m_T, e(st[5], gc))},
        {6, exergy_flow(sol.m_T, e(st[6], gc))},
        {7, exergy_flow(sol.m_T, e(st[7], gc))},
        {8, E8 / 1e6},
        {9, (E8 - EDn) / 1e6},
    };
    return rep;
}

} // namespace turbofan
