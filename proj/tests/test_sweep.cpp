#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "turbofan/csv.hpp"
#include "turbofan/errors.hpp"
#include "turbofan/gasprops.hpp"
#include "turbofan/sweep.hpp"

using namespace turbofan;

namespace {
struct TempFile {
    std::string path;
    TempFile(const std::string& p, const std::string& content) : path(p) {
        std::ofstream f(p);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};
} // namespace

TEST_CASE("sweep specs parse baselines and axes") {
    TempFile spec("spec_test.txt",
                  "# comment\n"
                  "fuel = Hydrogen\n"
                  "mach = 2.0\n"
                  "altitude = 20000\n"
                  "dt_iat = -5\n"
                  "max_points = 50\n"
                  "axis tit = 1800, 2000, 2200\n"
                  "axis alpha = 0.4, 0.8\n");
    SweepSpec s = parse_sweep_spec(spec.path);
    CHECK(s.base_fuel == "Hydrogen");
    CHECK(s.base_fc.mach == 2.0);
    CHECK(s.base_fc.altitude == 20000.0);
    CHECK(s.base_fc.dt_iat == -5.0);
    CHECK(s.max_points == 50);
    REQUIRE(s.axes.size() == 2);
    CHECK(s.axes[0].name == "tit");
    CHECK(s.axes[0].values.size() == 3);
    CHECK(s.axes[1].name == "alpha");
    CHECK(s.axes[1].values.size() == 2);
}

TEST_CASE("sweep specs reject malformed input") {
    {
        TempFile f("spec_bad1.txt", "axis warp = 1, 2\n");
        CHECK_THROWS_AS(parse_sweep_spec(f.path), ConfigError);
    }
    {
        TempFile f("spec_bad2.txt", "mach 2.0\n");
        CHECK_THROWS_AS(parse_sweep_spec(f.path), ConfigError);
    }
    {
        TempFile f("spec_bad3.txt", "unknown = 3\n");
        CHECK_THROWS_AS(parse_sweep_spec(f.path), ConfigError);
    }
    CHECK_THROWS_AS(parse_sweep_spec("spec_missing.txt"), IoError);
}

TEST_CASE("sweep specs can pull in an engine config") {
    TempFile cfg("sweep_engine.cfg", "pi_c = 7.0\ntit_K = 2000\n");
    TempFile spec("spec_cfg.txt", "config = sweep_engine.cfg\n"
                                  "axis mach = 0, 0.8\n");
    SweepSpec s = parse_sweep_spec(spec.path);
    CHECK(s.base_cfg.pi_c == 7.0);
    CHECK(s.base_cfg.tit == 2000.0);
    CHECK(s.base_cfg.pi_fan == 4.7); // untouched default
}

TEST_CASE("sweeps cover the product grid with the last axis fastest") {
    TempFile spec("spec_grid.txt",
                  "mach = 2.0\naltitude = 20000\n"
                  "axis alpha = 0.4, 0.6\n"
                  "axis tit = 1900, 2000, 2100\n");
    SweepSpec s = parse_sweep_spec(spec.path);
    std::vector<SweepRow> rows = run_sweep(s, FuelDb::builtin());
    REQUIRE(rows.size() == 6);
    const double want[6][2] = {{0.4, 1900.0}, {0.4, 2000.0}, {0.4, 2100.0},
                               {0.6, 1900.0}, {0.6, 2000.0}, {0.6, 2100.0}};
    for (int i = 0; i < 6; ++i) {
        CHECK(rows[i].alpha == want[i][0]);
        CHECK(rows[i].tit == want[i][1]);
        CHECK(rows[i].ok);
        CHECK(rows[i].sol.thrust_kN > 0.0);
        CHECK(rows[i].ex.components.size() == 7);
    }
}

TEST_CASE("infeasible sweep points are kept with a reason") {
    TempFile spec("spec_fail.txt",
                  "mach = 0\naltitude = 0\n"
                  "axis tit = 700, 2175\n");
    SweepSpec s = parse_sweep_spec(spec.path);
    std::vector<SweepRow> rows = run_sweep(s, FuelDb::builtin());
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].ok);
    CHECK_FALSE(rows[0].reason.empty());
    CHECK(rows[1].ok);

    write_sweep_csv("sweep_out_test.csv", rows);
    Table t = read_table("sweep_out_test.csv");
    CHECK(t.rows.size() == 2);
    CHECK(t.header.size() == 32);
    std::size_t ok_col = t.col("ok");
    CHECK(t.rows[0][ok_col] == "0");
    CHECK(t.rows[1][ok_col] == "1");
    CHECK(parse_double(t.rows[1][t.col("thrust_kN")]) ==
          doctest::Approx(175.24252510223513).epsilon(1e-6));
    std::remove("sweep_out_test.csv");
}

TEST_CASE("oversized sweeps are refused up front") {
    TempFile spec("spec_big.txt",
                  "max_points = 5\n"
                  "axis tit = 1900, 2000, 2100\n"
                  "axis alpha = 0.4, 0.6\n");
    SweepSpec s = parse_sweep_spec(spec.path);
    CHECK_THROWS_AS(run_sweep(s, FuelDb::builtin()), ConfigError);
}

TEST_CASE("fuel axis values are validated before running") {
    TempFile spec("spec_fuel.txt", "axis fuel = JP10, Unobtainium\n");
    SweepSpec s = parse_sweep_spec(spec.path);
    CHECK_THROWS_AS(run_sweep(s, FuelDb::builtin()), ConfigError);
}

TEST_CASE("dataset range files override the defaults") {
    TempFile f("ranges_test.txt", "pi_c = 5, 6\ntit = 1700, 1900\n");
    DatasetRanges r = load_dataset_ranges(f.path);
    CHECK(r.pi_c[0] == 5.0);
    CHECK(r.pi_c[1] == 6.0);
    CHECK(r.tit[0] == 1700.0);
    CHECK(r.tit[1] == 1900.0);
    CHECK(r.pi_fan[0] == 3.0); // untouched default
    CHECK(r.alpha[1] == 1.0);

    TempFile bad1("ranges_bad1.txt", "pi_q = 1, 2\n");
    CHECK_THROWS_AS(load_dataset_ranges(bad1.path), ConfigError);
    TempFile bad2("ranges_bad2.txt", "pi_c = 6, 5\n");
    CHECK_THROWS_AS(load_dataset_ranges(bad2.path), ConfigError);
    TempFile bad3("ranges_bad3.txt", "pi_c = 5\n");
    CHECK_THROWS_AS(load_dataset_ranges(bad3.path), ConfigError);
}

TEST_CASE("dataset generation is deterministic and well formed") {
    Dataset a = gen_dataset(11, 40);
    Dataset b = gen_dataset(11, 40);
    CHECK(a.train.size() == 32);
    CHECK(a.test.size() == 8);
    REQUIRE(b.train.size() == a.train.size());
    for (std::size_t i = 0; i < a.train.size(); ++i)
        for (std::size_t c = 0; c < 8; ++c)
            CHECK(a.train[i][c] == b.train[i][c]);
    for (std::size_t c = 0; c < 8; ++c) {
        CHECK(a.col_min[c] == b.col_min[c]);
        CHECK(a.col_max[c] == b.col_max[c]);
        CHECK(a.col_min[c] < a.col_max[c]);
    }

    DatasetRanges def;
    const std::array<double, 2>* R[5] = {&def.pi_c, &def.pi_fan, &def.tit,
                                         &def.dt_iat, &def.alpha};
    auto check_rows = [&](const std::vector<DatasetRow>& rows) {
        for (const DatasetRow& row : rows) {
            for (std::size_t d = 0; d < 5; ++d) {
                CHECK(row[d] >= (*R[d])[0]);
                CHECK(row[d] <= (*R[d])[1]);
            }
            CHECK(row[5] > 0.0); // thrust
            CHECK(row[6] > 0.0); // fuel per thrust
            CHECK(row[7] > 0.0); // exergetic efficiency
            CHECK(row[7] < 1.0);
        }
    };
    check_rows(a.train);
    check_rows(a.test);

    Dataset c = gen_dataset(12, 40);
    bool all_same = true;
    for (std::size_t i = 0; i < a.train.size(); ++i)
        all_same = all_same && a.train[i][0] == c.train[i][0];
    CHECK_FALSE(all_same);
}

TEST_CASE("infeasible dataset samples are redrawn, not dropped") {
    DatasetRanges r;
    r.tit = {600.0, 1600.0}; // lower band is below the burner inlet
    Dataset ds = gen_dataset(3, 30, r);
    CHECK(ds.n_infeasible > 0);
    CHECK(ds.train.size() == 24);
    CHECK(ds.test.size() == 6);
    for (const DatasetRow& row : ds.train) CHECK(row[5] > 0.0);
}

TEST_CASE("dataset files land on disk with the normalization table") {
    Dataset ds = gen_dataset(5, 20);
    std::string dir = "dataset_out_test";
    write_dataset(dir, ds);
    Table tr = read_table(dir + "/train.csv");
    Table te = read_table(dir + "/test.csv");
    Table nm = read_table(dir + "/normalization.csv");
    CHECK(tr.rows.size() == 16);
    CHECK(te.rows.size() == 4);
    CHECK(tr.header.size() == 8);
    CHECK(tr.header[0] == "pi_c");
    CHECK(tr.header[7] == "eta_ex");
    REQUIRE(nm.rows.size() == 8);
    CHECK(nm.header.size() == 3);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(nm.rows[i][0] == tr.header[i]);
        CHECK(parse_double(nm.rows[i][1]) <= parse_double(nm.rows[i][2]));
    }
    std::filesystem::remove_all(dir);
}
