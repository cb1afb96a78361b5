#pragma once

#include "conival/arrangement.hpp"
#include "conival/cone.hpp"

#include <random>

namespace conival::testing {

inline Vec iv(std::initializer_list<long long> entries) {
    Vec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (long long e : entries) v(i++) = Rational(e);
    return v;
}

inline Vec rv(std::initializer_list<const char*> entries) {
    Vec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const char* e : entries) v(i++) = rat_from_string(e);
    return v;
}

/** Random integer vector with entries in [-bound, bound], not all zero. */
inline Vec random_int_vec(std::mt19937_64& rng, int dim, int bound = 5) {
    std::uniform_int_distribution<long long> dist(-bound, bound);
    while (true) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v(i) = Rational(dist(rng));
        if (!is_zero_vec(v)) return v;
    }
}

/** Random central arrangement in R^d with up to n (deduplicated) hyperplanes. */
inline Arrangement random_arrangement(std::mt19937_64& rng, int d, int n, int bound = 3) {
    std::vector<Vec> normals;
    for (int i = 0; i < n; ++i) normals.push_back(random_int_vec(rng, d, bound));
    return Arrangement(d, normals);
}

/** Random simplicial cone: d linearly independent integer rays. */
inline Cone random_simplicial_cone(std::mt19937_64& rng, int d, int bound = 5) {
    while (true) {
        std::vector<Vec> rays;
        for (int i = 0; i < d; ++i) rays.push_back(random_int_vec(rng, d, bound));
        if (rank_of(stack_rows(rays, d)) == d) return Cone::from_generators(d, rays);
    }
}

}  // namespace conival::testing
