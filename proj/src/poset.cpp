#include "conival/poset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace conival {

Poset::Poset(int n, const std::function<bool(int, int)>& leq) : n_(n) {
    if (n < 0) throw std::invalid_argument("poset size must be nonnegative");
    rel_.assign(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rel_[i][j] = leq(i, j) ? 1 : 0;

    for (int i = 0; i < n; ++i)
        if (!rel_[i][i]) throw std::invalid_argument("order relation is not reflexive");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && rel_[i][j] && rel_[j][i])
                throw std::invalid_argument("order relation is not antisymmetric");
            if (!rel_[i][j]) continue;
            for (int k = 0; k < n; ++k)
                if (rel_[j][k] && !rel_[i][k]) throw std::invalid_argument("order relation is not transitive");
        }

    // Moebius function by the defining recursion, filling targets in a linear
    // extension (sorted by the number of elements below).
    std::vector<int> below(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (rel_[i][j]) ++below[static_cast<size_t>(j)];
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });

    mu_.assign(static_cast<size_t>(n), std::vector<Integer>(static_cast<size_t>(n), Integer(0)));
    for (int x = 0; x < n; ++x)
        for (int y : order) {
            if (!rel_[x][y]) continue;
            if (x == y) {
                mu_[x][y] = 1;
                continue;
            }
            Integer s(0);
            for (int z = 0; z < n; ++z)
                if (rel_[x][z] && rel_[z][y] && z != y) s += mu_[x][z];
            mu_[x][y] = -s;
        }
}

std::optional<int> Poset::bottom() const {
    for (int i = 0; i < n_; ++i) {
        bool all = true;
        for (int j = 0; j < n_ && all; ++j) all = leq(i, j);
        if (all) return i;
    }
    return std::nullopt;
}

std::optional<int> Poset::top() const {
    for (int i = 0; i < n_; ++i) {
        bool all = true;
        for (int j = 0; j < n_ && all; ++j) all = leq(j, i);
        if (all) return i;
    }
    return std::nullopt;
}

bool Poset::isomorphic_via(const std::vector<int>& map_to, const Poset& other) const {
    if (n_ != other.n_ || static_cast<int>(map_to.size()) != n_) return false;
    std::vector<char> hit(static_cast<size_t>(n_), 0);
    for (int v : map_to) {
        if (v < 0 || v >= n_ || hit[static_cast<size_t>(v)]) return false;
        hit[static_cast<size_t>(v)] = 1;
    }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (leq(i, j) != other.leq(map_to[static_cast<size_t>(i)], map_to[static_cast<size_t>(j)])) return false;
    return true;
}

}  // namespace conival
