#pragma once

// Shared machinery for Monte Carlo estimators: a counter-based seed stream,
// an explicit Box-Muller transform, and the dyadic grid used to turn floating
// point Gaussian samples into exact rationals. Internal header.

#include "conival/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace conival::detail {

/// Samples are rounded to multiples of 2^-kFracBits; with |z| < 9 the
/// numerators stay far below 2^25, so integer dot products fit comfortably.
constexpr int kFracBits = 21;

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Decorrelated seed for a numbered substream of a master seed.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + 0x9e3779b97f4a7c15ull * (stream + 1));
}

/** Two independent standard normals from one engine (Box-Muller, explicit). */
inline void gauss_pair(std::mt19937_64& rng, double& z0, double& z1) {
    // u1 in (0,1], u2 in [0,1); 53-bit mantissas
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    z0 = r * std::cos(a);
    z1 = r * std::sin(a);
}

/// Fills m with the dyadic numerators of a standard Gaussian point in R^d.
inline void gauss_numerators(std::mt19937_64& rng, int d, std::vector<double>& z, std::vector<long long>& m) {
    for (int i = 0; i < d; i += 2) gauss_pair(rng, z[static_cast<size_t>(i)], z[static_cast<size_t>(i) + 1]);
    for (int i = 0; i < d; ++i)
        m[static_cast<size_t>(i)] = llround(z[static_cast<size_t>(i)] * static_cast<double>(1ll << kFracBits));
}

/// True if v is an integer vector fitting long long; then out holds its entries.
inline bool integer_row(const Vec& v, std::vector<long long>& out) {
    static const Integer lo(std::numeric_limits<long long>::min());
    static const Integer hi(std::numeric_limits<long long>::max());
    out.clear();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const Integer n = numerator(v(i));
        if (denominator(v(i)) != 1 || n < lo || n > hi) return false;
        out.push_back(n.convert_to<long long>());
    }
    return true;
}

}  // namespace conival::detail
