#include "conival/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace conival {

int rank_of(const Mat& m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    // Clear denominators row-wise (does not change the row space), then run
    // Bareiss fraction-free elimination over the integers.
    std::vector<std::vector<Integer>> a(static_cast<size_t>(rows), std::vector<Integer>(static_cast<size_t>(cols)));
    for (Eigen::Index i = 0; i < rows; ++i) {
        Integer l = 1;
        for (Eigen::Index j = 0; j < cols; ++j)
            if (m(i, j) != 0) l = lcm(l, denominator(m(i, j)));
        for (Eigen::Index j = 0; j < cols; ++j) {
            Rational scaled = m(i, j) * Rational(l);
            assert(denominator(scaled) == 1);
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = numerator(scaled);
        }
    }
    size_t r = 0;
    Integer prev = 1;
    for (size_t c = 0; c < static_cast<size_t>(cols) && r < static_cast<size_t>(rows); ++c) {
        size_t piv = r;
        while (piv < static_cast<size_t>(rows) && a[piv][c] == 0) ++piv;
        if (piv == static_cast<size_t>(rows)) continue;
        std::swap(a[r], a[piv]);
        for (size_t i = r + 1; i < static_cast<size_t>(rows); ++i) {
            for (size_t j = c + 1; j < static_cast<size_t>(cols); ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

Rref rref(const Mat& m) {
    Mat a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<int> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = r;
        while (piv < rows && a(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        a.row(r).swap(a.row(piv));
        Rational inv = a(r, c);
        for (Eigen::Index j = c; j < cols; ++j) a(r, j) /= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    Rref out;
    out.mat = a.topRows(r);
    out.pivots = std::move(pivots);
    return out;
}

std::vector<Vec> kernel_basis(const Mat& m) {
    const int cols = static_cast<int>(m.cols());
    Rref rr = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int p : rr.pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        Vec v = Vec::Zero(cols);
        v(f) = 1;
        for (size_t r = 0; r < rr.pivots.size(); ++r)
            v(rr.pivots[r]) = -rr.mat(static_cast<Eigen::Index>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& generators) {
    Subspace s(ambient);
    if (generators.empty()) return s;
    for (const Vec& g : generators)
        if (g.size() != ambient) throw std::invalid_argument("Subspace::span: dimension mismatch");
    Rref rr = rref(stack_rows(generators, ambient));
    for (Eigen::Index i = 0; i < rr.mat.rows(); ++i) s.basis_.push_back(rr.mat.row(i).transpose());
    return s;
}

Subspace Subspace::full(int ambient) {
    std::vector<Vec> id;
    for (int i = 0; i < ambient; ++i) id.push_back(unit_vec(ambient, i));
    return span(ambient, id);
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
    // Reduce against RREF rows: each row has a 1 in its pivot column and the
    // other rows vanish there, so one sweep suffices.
    Vec w = v;
    for (const Vec& row : basis_) {
        Eigen::Index p = 0;
        while (row(p) == 0) ++p;
        if (w(p) != 0) w -= w(p) * row;
    }
    return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
    for (const Vec& b : other.basis_)
        if (!contains(b)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& other) const {
    if (ambient_ != other.ambient_ || basis_.size() != other.basis_.size()) return false;
    for (size_t i = 0; i < basis_.size(); ++i)
        if (!vec_eq(basis_[i], other.basis_[i])) return false;
    return true;
}

Subspace Subspace::orthogonal_complement() const {
    if (basis_.empty()) return full(ambient_);
    return span(ambient_, kernel_basis(stack_rows(basis_, ambient_)));
}

Mat Subspace::projection_matrix() const {
    Mat p = Mat::Zero(ambient_, ambient_);
    if (basis_.empty()) return p;
    Mat b = stack_rows(basis_, ambient_);       // r x d
    Mat gram = b * b.transpose();               // r x r, invertible (basis independent)
    // Solve gram * y = b column-block-wise via Gauss-Jordan on [gram | b].
    Mat aug(gram.rows(), gram.cols() + b.cols());
    aug << gram, b;
    Rref rr = rref(aug);
    assert(static_cast<Eigen::Index>(rr.pivots.size()) == gram.rows());
    Mat solved = rr.mat.rightCols(b.cols());    // gram^{-1} b
    p = b.transpose() * solved;                 // b^T gram^{-1} b
    return p;
}

Vec Subspace::project(const Vec& x) const {
    if (x.size() != ambient_) throw std::invalid_argument("Subspace::project: dimension mismatch");
    if (basis_.empty()) return Vec::Zero(ambient_);
    Mat b = stack_rows(basis_, ambient_);
    Mat gram = b * b.transpose();
    Vec rhs = b * x;
    Mat aug(gram.rows(), gram.cols() + 1);
    aug << gram, rhs;
    Rref rr = rref(aug);
    assert(static_cast<Eigen::Index>(rr.pivots.size()) == gram.rows());
    Vec y = rr.mat.rightCols(1);
    return b.transpose() * y;
}

Rational Subspace::distance_sq(const Vec& x) const {
    Vec r = x - project(x);
    return r.dot(r);
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("Subspace::sum: ambient mismatch");
    std::vector<Vec> gens = basis_;
    gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, gens);
}

Subspace Subspace::intersect(const Subspace& other) const {
    return orthogonal_complement().sum(other.orthogonal_complement()).orthogonal_complement();
}

std::string Subspace::key() const {
    std::string s = "S" + std::to_string(ambient_) + ":";
    for (const Vec& b : basis_) {
        s += vec_key(b);
        s += ';';
    }
    return s;
}

namespace {

struct Ineq {
    Vec a;  // over the current variable prefix
    bool strict;
};

// Deduplicate parallel inequality rows, keeping the strict one if both occur.
void dedupe(std::vector<Ineq>& v) {
    std::map<std::string, size_t> seen;
    std::vector<Ineq> out;
    for (auto& q : v) {
        Vec p = primitive(q.a);
        std::string k = vec_key(p);
        auto it = seen.find(k);
        if (it == seen.end()) {
            seen.emplace(k, out.size());
            out.push_back(Ineq{std::move(p), q.strict});
        } else if (q.strict) {
            out[it->second].strict = true;
        }
    }
    v = std::move(out);
}

}  // namespace

std::optional<Vec> feasible(int dim, const std::vector<LinearConstraint>& constraints) {
    for (const auto& c : constraints)
        if (c.a.size() != dim) throw std::invalid_argument("feasible: constraint dimension mismatch");

    // Step 1: eliminate equations by substitution.
    std::vector<Vec> eq_rows;
    for (const auto& c : constraints)
        if (c.rel == Rel::EQ && !is_zero_vec(c.a)) eq_rows.push_back(c.a);
    Rref eq = rref(stack_rows(eq_rows, dim));
    std::vector<bool> is_pivot(static_cast<size_t>(dim), false);
    for (int p : eq.pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < dim; ++j)
        if (!is_pivot[static_cast<size_t>(j)]) free_cols.push_back(j);
    const int m = static_cast<int>(free_cols.size());

    auto reduce_to_free = [&](const Vec& a) -> Vec {
        // On the solution set of the equations, a.x equals a'.x where a' has
        // zeros in all pivot columns; compress a' to the free coordinates.
        Vec w = a;
        for (size_t r = 0; r < eq.pivots.size(); ++r) {
            int p = eq.pivots[r];
            if (w(p) != 0) w -= w(p) * Vec(eq.mat.row(static_cast<Eigen::Index>(r)).transpose());
        }
        Vec out(m);
        for (int j = 0; j < m; ++j) out(j) = w(free_cols[static_cast<size_t>(j)]);
        return out;
    };

    std::vector<Ineq> sys;
    for (const auto& c : constraints) {
        if (c.rel == Rel::EQ) continue;
        Vec r = reduce_to_free(c.a);
        if (is_zero_vec(r)) {
            if (c.rel == Rel::LT) return std::nullopt;  // 0 < 0
            continue;
        }
        sys.push_back(Ineq{std::move(r), c.rel == Rel::LT});
    }
    dedupe(sys);

    // Step 2: Fourier-Motzkin from the last free variable down to variable 1,
    // recording the constraints that mention each eliminated variable.
    std::vector<std::vector<Ineq>> level(static_cast<size_t>(m));
    constexpr size_t kBlowupCap = 200000;
    for (int t = m - 1; t >= 1; --t) {
        std::vector<Ineq> pos, neg, zero;
        for (auto& q : sys) {
            if (q.a(t) > 0) pos.push_back(q);
            else if (q.a(t) < 0) neg.push_back(q);
            else zero.push_back(q);
        }
        level[static_cast<size_t>(t)] = sys;  // full record for back-substitution
        std::vector<Ineq> next = std::move(zero);
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Vec w = p.a(t) * n.a - n.a(t) * p.a;  // positive combination, coeff at t is 0
                Ineq q{Vec(w.head(t)), p.strict || n.strict};
                if (is_zero_vec(q.a)) {
                    if (q.strict) return std::nullopt;
                    continue;
                }
                next.push_back(std::move(q));
            }
        // Truncate the zero-passthrough rows to the shorter prefix as well.
        for (auto& q : next)
            if (q.a.size() != t) q.a = Vec(q.a.head(t));
        dedupe(next);
        if (next.size() > kBlowupCap) throw std::runtime_error("feasible: Fourier-Motzkin blow-up");
        sys = std::move(next);
    }

    // Step 3: assign free variables in order, respecting recorded bounds.
    Vec freev = Vec::Zero(m);
    auto assign = [&](int t, const std::vector<Ineq>& cons) -> bool {
        bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
        Rational lo, hi;
        for (const auto& q : cons) {
            if (q.a(t) == 0) continue;
            Rational rest = 0;
            for (int j = 0; j < t; ++j) rest += q.a(j) * freev(j);
            Rational bound = -rest / q.a(t);
            if (q.a(t) > 0) {  // x_t <=(<) bound
                if (!has_hi || bound < hi || (bound == hi && q.strict)) { hi = bound; hi_strict = q.strict; }
                has_hi = true;
            } else {  // x_t >=(>) bound
                if (!has_lo || bound > lo || (bound == lo && q.strict)) { lo = bound; lo_strict = q.strict; }
                has_lo = true;
            }
        }
        if (!has_lo && !has_hi) { freev(t) = 0; return true; }
        if (has_lo && !has_hi) { freev(t) = lo_strict ? lo + 1 : lo; return true; }
        if (!has_lo && has_hi) { freev(t) = hi_strict ? hi - 1 : hi; return true; }
        if (lo > hi) return false;
        if (lo == hi) {
            if (lo_strict || hi_strict) return false;
            freev(t) = lo;
            return true;
        }
        freev(t) = (lo + hi) / 2;
        return true;
    };

    if (m > 0) {
        // Base level: remaining constraints mention only variable 0.
        for (const auto& q : sys)
            if (q.a(0) == 0 && q.strict) return std::nullopt;
        if (!assign(0, sys)) return std::nullopt;
        for (int t = 1; t < m; ++t)
            if (!assign(t, level[static_cast<size_t>(t)]))
                return std::nullopt;  // unreachable if elimination is correct
    }

    // Step 4: expand to the full coordinate vector via the equation pivots.
    Vec x = Vec::Zero(dim);
    for (int j = 0; j < m; ++j) x(free_cols[static_cast<size_t>(j)]) = freev(j);
    for (size_t r = 0; r < eq.pivots.size(); ++r) {
        Rational v = 0;
        for (int j = 0; j < m; ++j)
            v -= eq.mat(static_cast<Eigen::Index>(r), free_cols[static_cast<size_t>(j)]) * freev(j);
        x(eq.pivots[r]) = v;
    }

#ifndef NDEBUG
    for (const auto& c : constraints) {
        Rational v = c.a.dot(x);
        assert((c.rel == Rel::EQ && v == 0) || (c.rel == Rel::LE && v <= 0) || (c.rel == Rel::LT && v < 0));
    }
#endif
    return x;
}

}  // namespace conival
