#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "turbofan/atmosphere.hpp"
#include "turbofan/constants.hpp"
#include "turbofan/cycle.hpp"
#include "turbofan/errors.hpp"
#include "turbofan/gasprops.hpp"

using namespace turbofan;

namespace {
CycleSolution solve_ref(double mach, double alt, double dt, const char* fuel) {
    EngineConfig cfg;
    FlightCondition fc{mach, alt, dt};
    return solve_cycle(cfg, fc, fuel_lookup(fuel));
}
} // namespace

TEST_CASE("fixed point solves a classic contraction") {
    double r = fixed_point([](double x) { return std::cos(x); }, 1.0);
    CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-9));
    CHECK_THROWS_AS(fixed_point([](double x) { return 2.0 * x + 1.0; }, 1.0),
                    SolverError);
}

TEST_CASE("sea-level static reference point matches the frozen solution") {
    CycleSolution s = solve_ref(0.0, 0.0, 0.0, "JP10");
    const double T[] = {288.15, 288.14999999999998, 288.14999999999998,
                        464.80988437913635, 806.39728959356887, 2175.0,
                        1917.6284714039857, 1844.5133007918596,
                        1402.0149517401751, 845.31631874217715};
    const double P[] = {101325.0, 101325.0, 101325.0, 476227.5, 2857365.0,
                        2743070.3999999999, 1408269.023660698,
                        1152542.3859104677, 913444.84639485204, 101325.0};
    for (int i = 0; i <= 9; ++i) {
        CHECK(s.stations[i].T == doctest::Approx(T[i]).epsilon(1e-6));
        CHECK(s.stations[i].P == doctest::Approx(P[i]).epsilon(1e-6));
    }
    CHECK(s.m_total == doctest::Approx(147.0).epsilon(1e-12));
    CHECK(s.m_ah == doctest::Approx(93.630573248407657).epsilon(1e-12));
    CHECK(s.m_ac == doctest::Approx(53.369426751592343).epsilon(1e-12));
    CHECK(s.mdot_fuel == doctest::Approx(3.9615608664716446).epsilon(1e-6));
    CHECK(s.m_T == doctest::Approx(97.5921341148793).epsilon(1e-6));
    CHECK(s.m_g == doctest::Approx(150.96156086647164).epsilon(1e-6));
    CHECK(s.far == doctest::Approx(0.042310548029663136).epsilon(1e-6));
    CHECK(s.far_mix == doctest::Approx(0.026949393649466972).epsilon(1e-6));
    CHECK(s.V0 == 0.0);
    CHECK(s.V9 == doctest::Approx(1160.8420322126933).epsilon(1e-6));
    CHECK(s.thrust_kN == doctest::Approx(175.24252510223513).epsilon(1e-6));
    CHECK(s.tsfc == doctest::Approx(22.606161741623506).epsilon(1e-6));
    CHECK(s.eta_th == doctest::Approx(0.61022806015435382).epsilon(1e-6));
    CHECK(s.eta_p == 0.0);
    CHECK(s.W_fan_MW == doctest::Approx(9.5318432165320963).epsilon(1e-6));
    CHECK(s.W_hpc_MW == doctest::Approx(33.895841521918342).epsilon(1e-6));
    CHECK(s.heat_rate_MW ==
          doctest::Approx(165.84926008951047).epsilon(1e-6));
    CHECK(s.T9s == doctest::Approx(833.95512215053088).epsilon(1e-6));
    CHECK(s.cp_n == doctest::Approx(1210.3085438660462).epsilon(1e-6));
    CHECK(s.k_n == doctest::Approx(1.3093277373390508).epsilon(1e-6));
    CHECK(s.fuel_name == "JP10");
}

TEST_CASE("supersonic cruise point matches the frozen solution") {
    CycleSolution s = solve_ref(2.0, 20000.0, 0.0, "JP10");
    CHECK(s.thrust_kN == doctest::Approx(18.785641019474028).epsilon(1e-6));
    CHECK(s.tsfc == doctest::Approx(26.830323731250051).epsilon(1e-6));
    CHECK(s.m_total == doctest::Approx(22.91916177829367).epsilon(1e-6));
    CHECK(s.eta_p == doctest::Approx(0.59577016338865463).epsilon(1e-6));
    CHECK(s.eta_th == doctest::Approx(0.87876275434789275).epsilon(1e-6));
}

TEST_CASE("spool power balances close") {
    for (auto [mach, alt] : {std::pair{0.0, 0.0}, {2.0, 20000.0},
                             {0.8, 10000.0}}) {
        CycleSolution s = solve_ref(mach, alt, 0.0, "JP10");
        GasModel gc = GasModel::burned(fuel_lookup("JP10"), s.far);
        double T5 = s.stations[5].T, T6 = s.stations[6].T,
               T7 = s.stations[7].T;
        double W_hpt = s.m_T * cp_gas(0.5 * (T5 + T6), gc) * (T5 - T6);
        double W_lpt = s.m_T * cp_gas(0.5 * (T6 + T7), gc) * (T6 - T7);
        CHECK(W_hpt / 1e6 == doctest::Approx(s.W_hpc_MW).epsilon(1e-8));
        CHECK(W_lpt / 1e6 == doctest::Approx(s.W_fan_MW).epsilon(1e-8));
        CHECK(s.W_hpt_MW == s.W_hpc_MW);
        CHECK(s.W_lpt_MW == s.W_fan_MW);
    }
}

TEST_CASE("mass bookkeeping is exact") {
    CycleSolution s = solve_ref(2.0, 20000.0, 0.0, "Hydrogen");
    CHECK(s.m_ah + s.m_ac == doctest::Approx(s.m_total).epsilon(1e-15));
    CHECK(s.m_ah * s.far == doctest::Approx(s.mdot_fuel).epsilon(1e-15));
    CHECK(s.m_ah + s.mdot_fuel == doctest::Approx(s.m_T).epsilon(1e-15));
    CHECK(s.m_T + s.m_ac == doctest::Approx(s.m_g).epsilon(1e-15));
    CHECK(s.m_ac / s.m_ah == doctest::Approx(0.57).epsilon(1e-12));
    CHECK(s.stations[0].mdot == s.m_total);
    CHECK(s.stations[4].mdot == s.m_ah);
    CHECK(s.stations[7].mdot == s.m_T);
    CHECK(s.stations[9].mdot == s.m_g);
}

TEST_CASE("mixer enthalpy balance closes") {
    CycleSolution s = solve_ref(2.0, 20000.0, 0.0, "JP10");
    const Fuel& fuel = fuel_lookup("JP10");
    GasModel gc = GasModel::burned(fuel, s.far);
    GasModel gm = GasModel::burned(fuel, s.far_mix);
    double T3 = s.stations[3].T, T7 = s.stations[7].T, T8 = s.stations[8].T;
    double h_in = s.m_T * cp_gas(T7, gc) * T7 + s.m_ac * cp_air(T3) * T3;
    double h_out = s.m_g * cp_gas(T8, gm) * T8;
    CHECK(h_out == doctest::Approx(h_in).epsilon(1e-9));
    double P8 = (s.m_T * s.stations[7].P + s.m_ac * s.stations[3].P) / s.m_g;
    CHECK(s.stations[8].P == doctest::Approx(P8).epsilon(1e-12));
}

TEST_CASE("intake capture modes") {
    SUBCASE("static flight needs a design mass flow") {
        EngineConfig cfg;
        cfg.design_mass_flow.reset();
        CHECK_THROWS_AS(
            solve_cycle(cfg, {0.0, 0.0, 0.0}, fuel_lookup("JP10")),
            ConfigError);
    }
    SUBCASE("intake area fixes the captured flow") {
        EngineConfig cfg;
        cfg.intake_area = 1.0;
        CycleSolution s =
            solve_cycle(cfg, {0.8, 0.0, 0.0}, fuel_lookup("JP10"));
        AmbientState amb = isa_state(0.0);
        double V0 = 0.8 * std::sqrt(k_air(amb.T0) * R_AIR * amb.T0);
        CHECK(s.m_total == doctest::Approx(amb.rho0 * V0).epsilon(1e-12));
        CHECK(s.V0 == doctest::Approx(V0).epsilon(1e-15));
    }
    SUBCASE("capture scaling recovers the design flow at its reference") {
        // rho*V at sea level / Mach 0.8 is the scaling reference, so the
        // scaled flow must equal the design flow exactly there
        CycleSolution s = solve_ref(0.8, 0.0, 0.0, "JP10");
        CHECK(s.m_total == doctest::Approx(147.0).epsilon(1e-12));
    }
    SUBCASE("heating the intake lowers the captured flow") {
        CycleSolution warm = solve_ref(2.0, 20000.0, 10.0, "JP10");
        CycleSolution cold = solve_ref(2.0, 20000.0, -10.0, "JP10");
        CHECK(cold.m_total > warm.m_total);
    }
}

TEST_CASE("unreachable burner temperature is rejected") {
    EngineConfig cfg;
    cfg.tit = 700.0; // below the compressor exit temperature
    CHECK_THROWS_AS(solve_cycle(cfg, {0.0, 0.0, 0.0}, fuel_lookup("JP10")),
                    SolverError);
}

TEST_CASE("configuration validation") {
    EngineConfig cfg;
    SUBCASE("pressure ratio") { cfg.pi_fan = 0.9; }
    SUBCASE("efficiency above one") { cfg.eta_c = 1.2; }
    SUBCASE("efficiency zero") { cfg.eta_n = 0.0; }
    SUBCASE("negative bypass") { cfg.alpha = -0.1; }
    SUBCASE("burner loss") { cfg.dpcc_frac = 0.25; }
    SUBCASE("nonpositive design flow") { cfg.design_mass_flow = 0.0; }
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("nozzle primitive returns zero velocity with no pressure drop") {
    CHECK(nozzle_exit_velocity(1400.0, 101325.0, 101325.0, 1.31, 28.9, 0.98) ==
          0.0);
}

TEST_CASE("engine config files round-trip") {
    std::string path = "engine_cfg_test.txt";
    {
        std::ofstream f(path);
        f << "# test engine\n";
        f << "pi_fan = 3.5\n";
        f << "pi_c = 7.25\n";
        f << "tit_K = 1900\n";
        f << "alpha = 0.8\n";
        f << "eta_n = 0.97\n";
        f << "fan_full_flow = true\n";
        f << "intake_area_m2 = 0.9\n";
    }
    EngineConfig cfg = load_engine_config(path);
    CHECK(cfg.pi_fan == 3.5);
    CHECK(cfg.pi_c == 7.25);
    CHECK(cfg.tit == 1900.0);
    CHECK(cfg.alpha == 0.8);
    CHECK(cfg.eta_n == 0.97);
    CHECK(cfg.fan_full_flow);
    CHECK(cfg.intake_area.has_value());
    CHECK(*cfg.intake_area == 0.9);
    CHECK(cfg.eta_c == 0.85); // untouched default
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_engine_config("no_such_file.txt"), IoError);
    {
        std::ofstream f(path);
        f << "pi_wrong = 3\n";
    }
    CHECK_THROWS_AS(load_engine_config(path), ConfigError);
    {
        std::ofstream f(path);
        f << "fan_full_flow = maybe\n";
    }
    CHECK_THROWS_AS(load_engine_config(path), ConfigError);
    {
        std::ofstream f(path);
        f << "pi_fan 3\n";
    }
    CHECK_THROWS_AS(load_engine_config(path), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("fan work can be charged on the full stream") {
    EngineConfig cfg;
    cfg.fan_full_flow = true;
    CycleSolution s = solve_cycle(cfg, {0.0, 0.0, 0.0}, fuel_lookup("JP10"));
    CycleSolution base = solve_ref(0.0, 0.0, 0.0, "JP10");
    CHECK(s.m_fan == doctest::Approx(s.m_total).epsilon(1e-15));
    CHECK(base.m_fan == doctest::Approx(base.m_ac).epsilon(1e-15));
    // more fan work to absorb => hotter LPT drop => different exhaust
    CHECK(s.W_fan_MW > base.W_fan_MW);
    CHECK(s.stations[7].T < base.stations[7].T);
}

TEST_CASE("negative mach is rejected") {
    EngineConfig cfg;
    CHECK_THROWS_AS(solve_cycle(cfg, {-0.1, 0.0, 0.0}, fuel_lookup("JP10")),
                    ConfigError);
}
