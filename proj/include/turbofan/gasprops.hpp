#pragma once

#include <array>
#include <map>
#include <string>

namespace turbofan {

// Fuel record: composition CaHb plus tabulated heating value and chemical
// exergy. Stoichiometric quantities are derived from the composition once at
// construction.
struct Fuel {
    std::string name;
    int a = 0; // carbon atoms
    int b = 0; // hydrogen atoms
    double fhv = 0.0;         // J/kg
    double chem_exergy = 0.0; // J/kg
    double mw = 0.0;          // g/mol

    double afr_st = 0.0;                // stoichiometric air/fuel mass ratio
    std::array<double, 4> prod_y{};     // product mass fractions: N2, Ar, CO2, H2O
};

// Builds a Fuel and precomputes afr_st and the stoichiometric product mass
// fractions from the CaHb composition. Heating value and chemical exergy are
// taken in MJ/kg.
Fuel make_fuel(const std::string& name, int a, int b,
               double fhv_MJ_per_kg, double chem_exergy_MJ_per_kg,
               double mw_g_per_mol);

// Combustion-state descriptor: pure air or air + stoichiometric products at a
// given fuel/air mass ratio. far == 0 always degenerates to pure air.
struct GasModel {
    bool is_air = true;
    Fuel fuel;
    double fuel_air_ratio = 0.0;

    static GasModel air() { return GasModel{}; }
    static GasModel burned(const Fuel& f, double far);
};

// Dry-air specific heat, J/(kg K), valid on [200, 2600] K; throws RangeError
// outside. k is derived as cp/(cp - R_air).
double cp_air(double T);
double k_air(double T);

// Mixture properties of combustion gas at the model's fuel/air ratio.
double cp_gas(double T, const GasModel& gas);
double k_gas(double T, const GasModel& gas);
double mw_products(const GasModel& gas); // g/mol
double r_gas(const GasModel& gas);       // J/(kg K)

// Chemical-exergy correlation for liquid hydrocarbons CaHb, MJ/kg in and out.
// Throws ConfigError when a == 0 (use the tabulated value instead).
double chemical_exergy_hydrocarbon(double fhv_MJ_per_kg, int a, int b);

// Fuel database: the four built-in fuels plus optional records loaded from a
// CSV file (header: name,a,b,FHV_MJ_per_kg,chem_exergy_MJ_per_kg,MW_g_per_mol).
class FuelDb {
  public:
    static FuelDb builtin();
    void merge_file(const std::string& path); // adds/overrides records
    const Fuel& get(const std::string& name) const; // throws ConfigError
    const std::map<std::string, Fuel>& all() const { return fuels_; }

  private:
    std::map<std::string, Fuel> fuels_;
};

// Built-in table lookup. Throws ConfigError for unknown names.
const Fuel& fuel_lookup(const std::string& name);

} // namespace turbofan
