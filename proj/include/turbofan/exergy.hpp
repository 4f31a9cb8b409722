#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turbofan/atmosphere.hpp"
#include "turbofan/cycle.hpp"
#include "turbofan/gasprops.hpp"

namespace turbofan {

struct ComponentExergy {
    std::string name;              // fan, hpc, cc, hpt, lpt, mixer, nozzle
    std::optional<double> eta_ex;  // absent when the defining work is zero
    double E_D_MW = 0.0;
};

struct ExergyReport {
    std::vector<ComponentExergy> components; // fixed order fan..nozzle
    double overall_eta_ex = 0.0;
    std::vector<std::pair<int, double>> station_exergy_MW; // stations 1..9
    double fuel_exergy_rate_MW = 0.0;
};

// Specific physical exergy relative to the dead state, J/kg. cp is evaluated
// at the arithmetic mean of T and T0.
double physical_exergy(double T, double P, const AmbientState& dead,
                       const GasModel& gas);

// Stream exergy rate, MW.
double exergy_flow(double mdot, double e_J_per_kg);

// Chemical exergy rate carried by the fuel stream, MW.
double fuel_exergy_rate(double mdot_fuel, const Fuel& fuel);

// Per-component exergy efficiency and destruction plus the overall exergetic
// efficiency thrust_power / fuel_exergy_rate. Component boundaries follow the
// work bookkeeping of the cycle solution (the fan uses the flow its work was
// charged on), the burner balances against the fuel chemical exergy, and the
// nozzle destruction is the entropy-generation term of the expansion so the
// reported exit exergy keeps the jet kinetic part.
ExergyReport component_exergy(const CycleSolution& sol,
                              const AmbientState& dead, const Fuel& fuel);

} // namespace turbofan
