#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Deterministic sampling primitives built directly on mt19937_64 output.
// The standard <random> distributions are implementation-defined, so every
// draw here is spelled out to keep generated artifacts byte-identical across
// toolchains.
namespace turbofan::rng {

using Engine = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer on [0, n) by rejection, bias-free.
inline std::uint64_t below(Engine& g, std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v = g();
    while (v >= limit) v = g();
    return v % n;
}

// Fisher-Yates permutation of 0..n-1.
inline std::vector<std::size_t> permutation(Engine& g, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(below(g, i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

// Standard normal draw, Box-Muller without caching the second value.
inline double normal(Engine& g) {
    double u1 = 1.0 - uniform01(g); // (0, 1]
    double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

} // namespace turbofan::rng
