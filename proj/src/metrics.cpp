#include "turbofan/metrics.hpp"

#include <cmath>

#include "turbofan/errors.hpp"

namespace turbofan {

EvalMetrics evaluate(const std::vector<double>& y,
                     const std::vector<double>& yhat) {
    if (y.size() != yhat.size())
        throw ConfigError("metric inputs differ in length");
    std::size_t n = y.size();
    if (n < 2) throw ConfigError("metrics need at least two samples");

    double ym = 0.0, pm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] == 0.0)
            throw ConfigError("relative error undefined: reference value is 0");
        ym += y[i];
        pm += yhat[i];
    }
    ym /= static_cast<double>(n);
    pm /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    double se = 0.0, ae = 0.0, ape = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dy = y[i] - ym;
        double dp = yhat[i] - pm;
        sxx += dy * dy;
        syy += dp * dp;
        sxy += dy * dp;
        double err = y[i] - yhat[i];
        se += err * err;
        ae += std::abs(err);
        ape += std::abs(err / y[i]);
    }

    EvalMetrics m;
    m.n = n;
    m.mse = se / static_cast<double>(n);
    m.rmse = std::sqrt(m.mse);
    m.mae = ae / static_cast<double>(n);
    m.mape_percent = 100.0 * ape / static_cast<double>(n);
    if (sxx > 0.0 && syy > 0.0) {
        double r = sxy / std::sqrt(sxx * syy);
        m.r = r;
        m.r2 = r * r;
    }
    return m;
}

} // namespace turbofan
