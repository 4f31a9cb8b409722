#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace turbofan {

struct EvalMetrics {
    std::optional<double> r;  // absent when either vector has zero variance
    std::optional<double> r2; // square of r
    double rmse = 0.0;
    double mse = 0.0;
    double mae = 0.0;
    double mape_percent = 0.0;
    std::size_t n = 0;
};

// All six regression metrics over paired samples. Throws ConfigError on
// length mismatch, n < 2, or a zero entry in y (MAPE undefined).
EvalMetrics evaluate(const std::vector<double>& y,
                     const std::vector<double>& yhat);

} // namespace turbofan
