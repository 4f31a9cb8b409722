#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "turbofan/constants.hpp"
#include "turbofan/errors.hpp"
#include "turbofan/gasprops.hpp"

using namespace turbofan;

TEST_CASE("air heat capacity matches frozen anchors") {
    CHECK(cp_air(200.0) == doctest::Approx(996.74245030026862).epsilon(1e-12));
    CHECK(cp_air(300.0) == doctest::Approx(1002.4347891281785).epsilon(1e-12));
    CHECK(cp_air(1000.0) == doctest::Approx(1140.5996860366636).epsilon(1e-12));
    CHECK(cp_air(2175.0) == doctest::Approx(1262.0042914618043).epsilon(1e-12));
    CHECK(cp_air(2600.0) == doctest::Approx(1282.9699477261654).epsilon(1e-12));
    CHECK(k_air(300.0) == doctest::Approx(1.4012525907208913).epsilon(1e-12));
}

TEST_CASE("air molar mass is consistent with its gas constant") {
    CHECK(M_AIR == doctest::Approx(28.965206821111302).epsilon(1e-15));
    CHECK(R_U * 1000.0 / M_AIR == doctest::Approx(R_AIR).epsilon(1e-15));
}

TEST_CASE("temperatures outside the fit range are rejected") {
    CHECK_THROWS_AS(cp_air(199.9), RangeError);
    CHECK_THROWS_AS(cp_air(2600.1), RangeError);
    CHECK_THROWS_AS(cp_gas(199.9, GasModel::air()), RangeError);
}

TEST_CASE("combustion gas properties match frozen anchors") {
    GasModel g = GasModel::burned(fuel_lookup("JP10"), 0.03);
    CHECK(cp_gas(1500.0, g) == doctest::Approx(1271.420476706623).epsilon(1e-12));
    CHECK(mw_products(g) == doctest::Approx(29.090677017183861).epsilon(1e-12));
    CHECK(r_gas(g) == doctest::Approx(285.81193256824679).epsilon(1e-12));
    CHECK(k_gas(1500.0, g) ==
          doctest::Approx(1.2899852423845461).epsilon(1e-12));

    GasModel h2 = GasModel::burned(fuel_lookup("Hydrogen"), 0.02);
    CHECK(cp_gas(1500.0, h2) ==
          doctest::Approx(1470.6153104591626).epsilon(1e-12));
    CHECK(mw_products(h2) ==
          doctest::Approx(25.806987330277146).epsilon(1e-12));
}

TEST_CASE("zero fuel-air ratio reduces to clean air") {
    GasModel g = GasModel::burned(fuel_lookup("JP10"), 0.0);
    for (double T : {250.0, 800.0, 1900.0}) {
        CHECK(cp_gas(T, g) == doctest::Approx(cp_air(T)).epsilon(1e-15));
        CHECK(k_gas(T, g) == doctest::Approx(k_air(T)).epsilon(1e-15));
    }
    CHECK(r_gas(g) == doctest::Approx(R_AIR).epsilon(1e-15));
}

TEST_CASE("stoichiometry of the built-in fuels") {
    CHECK(fuel_lookup("JP10").afr_st ==
          doctest::Approx(14.234103720649451).epsilon(1e-12));
    CHECK(fuel_lookup("Diesel").afr_st ==
          doctest::Approx(14.696803413878433).epsilon(1e-12));
    CHECK(fuel_lookup("NaturalGas").afr_st ==
          doctest::Approx(17.284268803645762).epsilon(1e-12));
    CHECK(fuel_lookup("Hydrogen").afr_st ==
          doctest::Approx(34.568537607291525).epsilon(1e-12));

    const Fuel& jp = fuel_lookup("JP10");
    CHECK(jp.fhv == doctest::Approx(42.075e6).epsilon(1e-15));
    CHECK(jp.chem_exergy == doctest::Approx(44.921e6).epsilon(1e-15));
    CHECK(jp.mw == doctest::Approx(136.0).epsilon(1e-15));
    CHECK(jp.prod_y[0] == doctest::Approx(0.70553208060580885).epsilon(1e-12));
    CHECK(jp.prod_y[1] == doctest::Approx(0.012066788855656724).epsilon(1e-12));
    CHECK(jp.prod_y[2] == doctest::Approx(0.21284648675953308).epsilon(1e-12));
    CHECK(jp.prod_y[3] ==
          doctest::Approx(0.069554643779001377).epsilon(1e-12));

    const Fuel& h2 = fuel_lookup("Hydrogen");
    CHECK(h2.prod_y[3] == doctest::Approx(0.2531908892001678).epsilon(1e-12));
    double sum = 0.0;
    for (double y : h2.prod_y) sum += y;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hydrocarbon chemical exergy correlation") {
    CHECK(chemical_exergy_hydrocarbon(42.740, 12, 23) ==
          doctest::Approx(44.66166473043479).epsilon(1e-12));
    CHECK(chemical_exergy_hydrocarbon(42.075, 10, 16) ==
          doctest::Approx(43.98912323437501).epsilon(1e-12));
    // close to the tabulated value for diesel; the table stays authoritative
    CHECK(chemical_exergy_hydrocarbon(42.740, 12, 23) ==
          doctest::Approx(44.661).epsilon(1e-4));
    CHECK_THROWS_AS(chemical_exergy_hydrocarbon(118.429, 0, 2), ConfigError);
}

TEST_CASE("fuel database lookups and file merges") {
    CHECK_THROWS_AS(fuel_lookup("Kerosene"), ConfigError);

    std::string path = "fuels_extra_test.csv";
    {
        std::ofstream f(path);
        f << "name,a,b,FHV_MJ_per_kg,chem_exergy_MJ_per_kg,MW_g_per_mol\n";
        f << "Propane,3,8,46.35,48.9,44\n";
        f << "JP10,10,16,40.0,43.0,136\n"; // override
    }
    FuelDb db = FuelDb::builtin();
    db.merge_file(path);
    CHECK(db.get("Propane").afr_st > 10.0);
    CHECK(db.get("JP10").fhv == doctest::Approx(40.0e6).epsilon(1e-15));
    CHECK(FuelDb::builtin().get("JP10").fhv ==
          doctest::Approx(42.075e6).epsilon(1e-15));
    CHECK(db.all().size() == 5);
    std::remove(path.c_str());
}
