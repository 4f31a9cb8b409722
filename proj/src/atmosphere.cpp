#include "turbofan/atmosphere.hpp"

#include <array>
#include <cmath>
#include <string>

#include "turbofan/constants.hpp"
#include "turbofan/errors.hpp"

namespace turbofan {

namespace {

struct Layer {
    double base_h;
    double base_T;
    double lapse; // K/m
};

constexpr std::array<Layer, 4> LAYERS{{
    {0.0, 288.15, -0.0065},
    {11000.0, 216.65, 0.0},
    {20000.0, 216.65, 0.0010},
    {32000.0, 228.65, 0.0028},
}};

constexpr double TOP_ALTITUDE = 47000.0;

double pressure_step(double Pb, double Tb, double lapse, double dh) {
    if (lapse == 0.0) return Pb * std::exp(-G0 * dh / (R_AIR * Tb));
    double T = Tb + lapse * dh;
    return Pb * std::pow(Tb / T, G0 / (R_AIR * lapse));
}

const std::array<double, 4>& base_pressures() {
    static const std::array<double, 4> bp = [] {
        std::array<double, 4> p{};
        p[0] = 101325.0;
        for (std::size_t i = 1; i < LAYERS.size(); ++i) {
            const Layer& lo = LAYERS[i - 1];
            p[i] = pressure_step(p[i - 1], lo.base_T, lo.lapse,
                                 LAYERS[i].base_h - lo.base_h);
        }
        return p;
    }();
    return bp;
}

} // namespace

AmbientState isa_state(double altitude_m) {
    if (!(altitude_m >= 0.0 && altitude_m <= TOP_ALTITUDE))
        throw RangeError("altitude out of supported range [0, 47000] m: " +
                         std::to_string(altitude_m));
    std::size_t i = 0;
    for (std::size_t j = 0; j < LAYERS.size(); ++j)
        if (altitude_m >= LAYERS[j].base_h) i = j;
    const Layer& L = LAYERS[i];
    double T = L.base_T + L.lapse * (altitude_m - L.base_h);
    double P = pressure_step(base_pressures()[i], L.base_T, L.lapse,
                             altitude_m - L.base_h);
    return AmbientState{altitude_m, T, P, P / (R_AIR * T)};
}

} // namespace turbofan
