#pragma once

#include "conival/rational.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace conival {

/**
 * Finite poset on {0, ..., n-1} with a precomputed order relation and Moebius
 * function. The constructor verifies the poset axioms, so a Poset value is
 * always a genuine partial order.
 */
class Poset {
public:
    Poset(int n, const std::function<bool(int, int)>& leq);

    int size() const { return n_; }
    bool leq(int i, int j) const { return rel_[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0; }
    bool lt(int i, int j) const { return i != j && leq(i, j); }

    /** mu(i, j); zero unless i <= j. */
    const Integer& mobius(int i, int j) const { return mu_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    std::optional<int> bottom() const;  // unique minimum, if one exists
    std::optional<int> top() const;     // unique maximum, if one exists

    /** Does i -> map_to[i] define an order isomorphism onto `other`? */
    bool isomorphic_via(const std::vector<int>& map_to, const Poset& other) const;

private:
    int n_;
    std::vector<std::vector<char>> rel_;
    std::vector<std::vector<Integer>> mu_;
};

}  // namespace conival
