#pragma once

namespace turbofan {

// Ambient state at a flight altitude; doubles as the exergy dead state.
struct AmbientState {
    double altitude = 0.0; // m
    double T0 = 0.0;       // K
    double P0 = 0.0;       // Pa
    double rho0 = 0.0;     // kg/m^3
};

// 1976 standard atmosphere, piecewise-linear lapse-rate layers up to 47 km.
// Throws RangeError outside [0, 47000] m.
AmbientState isa_state(double altitude_m);

} // namespace turbofan
