#pragma once

namespace turbofan {

inline constexpr double R_U = 8.314462618;              // J/(mol K)
inline constexpr double R_AIR = 287.05;                 // J/(kg K)
inline constexpr double M_AIR = R_U * 1000.0 / R_AIR;   // g/mol, consistent with R_AIR
inline constexpr double G0 = 9.80665;                   // m/s^2

} // namespace turbofan
