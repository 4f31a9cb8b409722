#include "turbofan/gasprops.hpp"

#include <array>
#include <cmath>
#include <string>

#include "turbofan/constants.hpp"
#include "turbofan/csv.hpp"
#include "turbofan/errors.hpp"

namespace turbofan {

namespace {

// Species order everywhere: N2, Ar, CO2, H2O (O2 only appears in intake air).
enum SpeciesIdx { S_N2 = 0, S_AR = 1, S_CO2 = 2, S_H2O = 3, S_O2 = 4 };

struct Species {
    double mw; // g/mol
    std::array<double, 5> low;  // cp/R coefficients, T < 1000 K
    std::array<double, 5> high; // T >= 1000 K
};

constexpr std::array<Species, 5> SPECIES{{
    // N2
    {28.0134,
     {3.298677e+00, 1.4082404e-03, -3.963222e-06, 5.641515e-09, -2.444854e-12},
     {2.92664e+00, 1.4879768e-03, -5.68476e-07, 1.0097038e-10, -6.753351e-15}},
    // Ar
    {39.948, {2.5, 0.0, 0.0, 0.0, 0.0}, {2.5, 0.0, 0.0, 0.0, 0.0}},
    // CO2
    {44.0095,
     {2.35677352e+00, 8.98459677e-03, -7.12356269e-06, 2.45919022e-09,
      -1.43699548e-13},
     {3.85746029e+00, 4.41437026e-03, -2.21481404e-06, 5.23490188e-10,
      -4.72084164e-14}},
    // H2O
    {18.01528,
     {4.19864056e+00, -2.03643410e-03, 6.52040211e-06, -5.48797062e-09,
      1.77197817e-12},
     {3.03399249e+00, 2.17691804e-03, -1.64072518e-07, -9.70419870e-11,
      1.68200992e-14}},
    // O2
    {31.9988,
     {3.78245636e+00, -2.99673416e-03, 9.84730201e-06, -9.68129509e-09,
      3.24372837e-12},
     {3.28253784e+00, 1.48308754e-03, -7.57966669e-07, 2.09470555e-10,
      -2.16717794e-14}},
}};

// Intake air mole fractions.
constexpr double AIR_X_N2 = 0.78084;
constexpr double AIR_X_O2 = 0.209476;
constexpr double AIR_X_AR = 0.009365;
constexpr double AIR_X_CO2 = 0.000319;
constexpr double AIR_M_MIX = AIR_X_N2 * 28.0134 + AIR_X_O2 * 31.9988 +
                             AIR_X_AR * 39.948 + AIR_X_CO2 * 44.0095;

double cp_species(int idx, double T) { // J/(kg K)
    const Species& s = SPECIES[static_cast<std::size_t>(idx)];
    const std::array<double, 5>& a = T < 1000.0 ? s.low : s.high;
    double cpR = a[0] + a[1] * T + a[2] * T * T + a[3] * T * T * T +
                 a[4] * T * T * T * T;
    return cpR * R_U * 1000.0 / s.mw;
}

// Degree-7 fit of the dry-air mixture cp over [200, 2600] K, J/(kg K),
// highest power first.
constexpr std::array<double, 8> AIR_CP_COEF{
    2.2261814919086946e-20, -2.0702643731505e-16, 7.394511214270616e-13,
    -1.2198708529478708e-09, 7.877388917277879e-07, 8.581788539883488e-05,
    -0.07063586833787128, 1002.8631311646843,
};

void check_T(double T) {
    if (!(T >= 200.0 && T <= 2600.0))
        throw RangeError("gas property temperature out of range [200, 2600] K: " +
                         std::to_string(T));
}

double cp_stoich_products(const Fuel& f, double T) {
    double cp = 0.0;
    for (int i = 0; i < 4; ++i)
        cp += f.prod_y[static_cast<std::size_t>(i)] * cp_species(i, T);
    return cp;
}

} // namespace

double cp_air(double T) {
    check_T(T);
    double v = 0.0;
    for (double c : AIR_CP_COEF) v = v * T + c;
    return v;
}

double k_air(double T) {
    double cp = cp_air(T);
    return cp / (cp - R_AIR);
}

Fuel make_fuel(const std::string& name, int a, int b, double fhv_MJ_per_kg,
               double chem_exergy_MJ_per_kg, double mw_g_per_mol) {
    if (a < 0 || b < 1)
        throw ConfigError("fuel " + name + ": need a >= 0 and b >= 1");
    if (!(fhv_MJ_per_kg > 0.0) || !(mw_g_per_mol > 0.0))
        throw ConfigError("fuel " + name + ": FHV and MW must be positive");
    Fuel f;
    f.name = name;
    f.a = a;
    f.b = b;
    f.fhv = fhv_MJ_per_kg * 1e6;
    f.chem_exergy = chem_exergy_MJ_per_kg * 1e6;
    f.mw = mw_g_per_mol;

    double nf = 1000.0 / f.mw;             // mol fuel per kg fuel
    double nO2 = nf * (a + b / 4.0);
    double nair = nO2 / AIR_X_O2;          // mol air per kg fuel
    f.afr_st = nair * AIR_M_MIX / 1000.0;

    std::array<double, 4> prod_n{
        nair * AIR_X_N2,
        nair * AIR_X_AR,
        nair * AIR_X_CO2 + nf * a,
        nf * (b / 2.0),
    };
    double tot_mass = 0.0;
    for (int i = 0; i < 4; ++i)
        tot_mass += prod_n[static_cast<std::size_t>(i)] *
                    SPECIES[static_cast<std::size_t>(i)].mw;
    for (int i = 0; i < 4; ++i)
        f.prod_y[static_cast<std::size_t>(i)] =
            prod_n[static_cast<std::size_t>(i)] *
            SPECIES[static_cast<std::size_t>(i)].mw / tot_mass;
    return f;
}

GasModel GasModel::burned(const Fuel& f, double far) {
    if (far < 0.0) throw ConfigError("fuel/air ratio must be >= 0");
    GasModel g;
    if (far == 0.0) return g;
    g.is_air = false;
    g.fuel = f;
    g.fuel_air_ratio = far;
    return g;
}

double cp_gas(double T, const GasModel& gas) {
    if (gas.is_air) return cp_air(T);
    check_T(T);
    double f = gas.fuel_air_ratio;
    double w = f * (1.0 + gas.fuel.afr_st) / (1.0 + f);
    return w * cp_stoich_products(gas.fuel, T) + (1.0 - w) * cp_air(T);
}

double mw_products(const GasModel& gas) {
    if (gas.is_air) return M_AIR;
    double n_air = 1000.0 / M_AIR;
    double n_f = 1000.0 * gas.fuel_air_ratio / gas.fuel.mw;
    double n_tot = n_air + n_f * (gas.fuel.b / 4.0);
    return (1.0 + gas.fuel_air_ratio) * 1000.0 / n_tot;
}

double r_gas(const GasModel& gas) { return R_U * 1000.0 / mw_products(gas); }

double k_gas(double T, const GasModel& gas) {
    double cp = cp_gas(T, gas);
    return cp / (cp - r_gas(gas));
}

double chemical_exergy_hydrocarbon(double fhv_MJ_per_kg, int a, int b) {
    if (a == 0)
        throw ConfigError(
            "chemical-exergy correlation needs a >= 1 carbon atom; "
            "use the tabulated value for carbon-free fuels");
    if (a < 0 || b < 1 || !(fhv_MJ_per_kg > 0.0))
        throw ConfigError("chemical-exergy correlation: invalid inputs");
    return fhv_MJ_per_kg *
           (1.04224 + 0.011925 * static_cast<double>(a) / b - 0.042 / a);
}

FuelDb FuelDb::builtin() {
    FuelDb db;
    db.fuels_["JP10"] = make_fuel("JP10", 10, 16, 42.075, 44.921, 136.0);
    db.fuels_["Diesel"] = make_fuel("Diesel", 12, 23, 42.740, 44.661, 167.0);
    db.fuels_["NaturalGas"] = make_fuel("NaturalGas", 1, 4, 49.736, 55.168, 16.0);
    db.fuels_["Hydrogen"] = make_fuel("Hydrogen", 0, 2, 118.429, 134.778, 2.0);
    return db;
}

void FuelDb::merge_file(const std::string& path) {
    Table t = read_table(path);
    std::size_t c_name = t.col("name");
    std::size_t c_a = t.col("a");
    std::size_t c_b = t.col("b");
    std::size_t c_fhv = t.col("FHV_MJ_per_kg");
    std::size_t c_ex = t.col("chem_exergy_MJ_per_kg");
    std::size_t c_mw = t.col("MW_g_per_mol");
    for (const auto& row : t.rows) {
        std::string name = strip(row[c_name]);
        if (name.empty()) throw ConfigError(path + ": empty fuel name");
        fuels_[name] = make_fuel(
            name, static_cast<int>(parse_int(row[c_a])),
            static_cast<int>(parse_int(row[c_b])), parse_double(row[c_fhv]),
            parse_double(row[c_ex]), parse_double(row[c_mw]));
    }
}

const Fuel& FuelDb::get(const std::string& name) const {
    auto it = fuels_.find(name);
    if (it == fuels_.end()) throw ConfigError("unknown fuel: " + name);
    return it->second;
}

const Fuel& fuel_lookup(const std::string& name) {
    static const FuelDb db = FuelDb::builtin();
    return db.get(name);
}

} // namespace turbofan
