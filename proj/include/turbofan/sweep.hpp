#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "turbofan/cycle.hpp"
#include "turbofan/exergy.hpp"
#include "turbofan/gasprops.hpp"

namespace turbofan {

// One swept parameter: a name from {mach, altitude, dt_iat, pi_c, pi_fan,
// tit, alpha, fuel} and its values (kept as strings so the fuel axis fits).
struct SweepAxis {
    std::string name;
    std::vector<std::string> values;
};

struct SweepSpec {
    FlightCondition base_fc;
    EngineConfig base_cfg;
    std::string base_fuel = "JP10";
    std::vector<SweepAxis> axes;
    std::size_t max_points = 100000;
};

// Text format: `key = value` lines for the baseline (fuel, mach, altitude,
// dt_iat, config, max_points) and `axis <name> = v1, v2, ...` lines for the
// swept parameters. '#' starts a comment.
SweepSpec parse_sweep_spec(const std::string& path);

struct SweepRow {
    double mach = 0.0, altitude = 0.0, dt_iat = 0.0;
    std::string fuel;
    double pi_c = 0.0, pi_fan = 0.0, tit = 0.0, alpha = 0.0;
    bool ok = false;
    std::string reason; // failure diagnostic, empty when ok
    CycleSolution sol;
    ExergyReport ex;
};

// Evaluates the Cartesian product of the axes over the baseline, last axis
// fastest. Failed points are kept as rows with a reason, never dropped.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const FuelDb& fuels);

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);

struct DatasetRanges {
    std::array<double, 2> pi_c{4.0, 8.0};
    std::array<double, 2> pi_fan{3.0, 6.0};
    std::array<double, 2> tit{1600.0, 2200.0};
    std::array<double, 2> dt_iat{-30.0, 0.0};
    std::array<double, 2> alpha{0.3, 1.0};
};

// name = lo, hi lines overriding the default ranges.
DatasetRanges load_dataset_ranges(const std::string& path);

// Row layout matches the CSV column order:
// pi_c, pi_fan, tit_K, dt_iat_K, alpha, thrust_kN, tsfc_g_per_kNs, eta_ex
using DatasetRow = std::array<double, 8>;

struct Dataset {
    std::vector<DatasetRow> train;
    std::vector<DatasetRow> test;
    std::array<double, 8> col_min{};
    std::array<double, 8> col_max{};
    std::size_t n_infeasible = 0;
};

inline std::size_t dataset_train_count(std::size_t n) { return n * 4 / 5; }

extern const char* const DATASET_HEADER;

// Latin-hypercube sample of the five design inputs solved at Mach 2.5 /
// 30 km on hydrogen; infeasible points are counted and replaced by fresh
// uniform draws until n solved rows exist, then an 80/20 seeded shuffle
// splits them. Pure function of (seed, n, ranges, base config).
Dataset gen_dataset(std::uint64_t seed, std::size_t n = 7599,
                    const DatasetRanges& ranges = {},
                    const EngineConfig& base = {});

// Writes train.csv, test.csv and normalization.csv (column,min,max) into dir.
void write_dataset(const std::string& dir, const Dataset& ds);

} // namespace turbofan
