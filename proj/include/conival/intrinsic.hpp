#pragma once

#include "conival/arrangement.hpp"
#include "conival/cone.hpp"
#include "conival/fan.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace conival {

/**
 * Monte Carlo estimates of the spherical intrinsic volumes v_0..v_d: v_k is
 * the probability that a standard Gaussian point projects onto a k-dimensional
 * face. Estimates carry raw tallies and per-coefficient estimator variances;
 * for sums over fans, values, counts and variances accumulate.
 */
struct IntrinsicEstimate {
    std::vector<double> values;     // v_0 .. v_d (or their sums over a fan)
    std::vector<long long> counts;  // raw tallies per dimension
    std::vector<double> variances;  // variance of each entry of `values`
    long long samples = 0;          // per-cone sample count
    std::uint64_t seed = 0;

    int max_dim() const { return static_cast<int>(values.size()) - 1; }
    /** Half-width of the z-sigma confidence interval for values[k]. */
    double ci_radius(int k, double z) const { return z * std::sqrt(variances[static_cast<size_t>(k)]); }
};

/**
 * Estimate the intrinsic volumes of a cone from `samples` Gaussian points.
 *
 * Sampling is floating point; each sample is then rounded to an exact dyadic
 * rational (21 fractional bits), so face identification is exact arithmetic
 * and the only statistical error is binomial noise plus a discretization bias
 * far below it. Work is split into fixed blocks with per-block seeds derived
 * from `seed`, so results are independent of the thread count (`threads` = 0
 * picks a hardware default).
 */
IntrinsicEstimate mc_intrinsic_volumes(const Cone& c, long long samples, std::uint64_t seed,
                                       int threads = 0);

/**
 * Closed-form intrinsic volumes of a two-dimensional pointed cone (in any
 * ambient dimension): v_2 = alpha/2pi for the opening angle alpha, v_1 = 1/2,
 * v_0 = 1/2 - alpha/2pi. Throws unless dim C = 2 and C is pointed.
 */
std::vector<double> exact_intrinsic_2d(const Cone& c);

/** Sum of per-cone estimates over a fan, with per-cone seeds derived from `seed`. */
IntrinsicEstimate fan_intrinsic_volumes(const Fan& fan, long long samples, std::uint64_t seed,
                                        int threads = 0);

/** Estimated characteristic polynomial of a fan: coefficient of t^k is v_k(fan). */
struct FanCharPoly {
    std::vector<double> coeff;
    std::vector<double> variances;
    long long samples = 0;

    double operator()(double t) const;
    double ci_radius(int k, double z) const { return z * std::sqrt(variances[static_cast<size_t>(k)]); }
};

FanCharPoly fan_char_poly(const Fan& fan, long long samples, std::uint64_t seed, int threads = 0);

/**
 * Zaslavsky-type evaluations of the estimated fan polynomial: at t = 1 the
 * count-based coefficients sum to the number of cones exactly; at t = -1 the
 * value must vanish within the propagated z-sigma tolerance. Defined for fans
 * of rank >= 1 (for a fan consisting of a single subspace the alternating sum
 * is +-1, not 0); rank-0 fans are rejected.
 */
CheckReport verify_zaslavsky(const Fan& fan, long long samples, std::uint64_t seed, double z = 4.0,
                             int threads = 0);

/**
 * Estimated characteristic polynomial of the region fan of an arrangement vs
 * the Whitney numbers: every coefficient must match within its z-sigma
 * confidence radius. The report carries a per-coefficient table.
 */
CheckReport verify_klivans_swartz(const Arrangement& a, long long samples, std::uint64_t seed,
                                  double z = 4.0, int threads = 0);

}  // namespace conival
