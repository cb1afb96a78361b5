#pragma once

#include "conival/rational.hpp"

#include <optional>
#include <vector>

namespace conival {

/** Rank over the rationals (fraction-free Bareiss elimination on a denominator-cleared copy). */
int rank_of(const Mat& m);

/** Reduced row echelon form: pivots are 1, pivot columns elsewhere 0, rows ordered by pivot. */
struct Rref {
    Mat mat;                  // nonzero rows only
    std::vector<int> pivots;  // pivot column per row, strictly increasing
};
Rref rref(const Mat& m);

/** Basis of the right kernel {x : m x = 0}. */
std::vector<Vec> kernel_basis(const Mat& m);

inline Mat stack_rows(const std::vector<Vec>& rows, int cols) {
    Mat m(static_cast<Eigen::Index>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    return m;
}

/**
 * Linear subspace of Q^d with a canonical RREF basis, so equal subspaces have
 * syntactically equal bases.
 */
class Subspace {
public:
    explicit Subspace(int ambient) : ambient_(ambient) {}
    static Subspace span(int ambient, const std::vector<Vec>& generators);
    static Subspace full(int ambient);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& other) const;
    bool operator!=(const Subspace& other) const { return !(*this == other); }

    Subspace orthogonal_complement() const;
    /** Orthogonal projection of x onto the subspace (exact, via normal equations). */
    Vec project(const Vec& x) const;
    /** The d x d matrix of the orthogonal projection onto this subspace. */
    Mat projection_matrix() const;
    /** Squared Euclidean distance from x to the subspace. */
    Rational distance_sq(const Vec& x) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    std::string key() const;

private:
    int ambient_ = 0;
    std::vector<Vec> basis_;  // canonical RREF rows
};

/** Homogeneous linear condition a.x REL 0. */
enum class Rel { EQ, LE, LT };

struct LinearConstraint {
    Vec a;
    Rel rel;
};

/**
 * Exact feasibility of a homogeneous system of equations and weak/strict
 * inequalities, returning a rational witness when one exists.
 *
 * Method: equations are eliminated by substitution (RREF), then
 * Fourier-Motzkin elimination on the inequalities with strictness tracking;
 * a witness is produced by back-substitution, picking interior points of the
 * admissible intervals. Chosen over a rational simplex because strict
 * inequalities are handled natively and witnesses fall out of the
 * elimination record; the doubling blow-up is irrelevant at the intended
 * problem sizes (d <= 6, dozens of constraints).
 */
std::optional<Vec> feasible(int dim, const std::vector<LinearConstraint>& constraints);

}  // namespace conival
