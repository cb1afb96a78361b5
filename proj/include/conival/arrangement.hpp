#pragma once

#include "conival/fan.hpp"
#include "conival/poset.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conival {

/**
 * Central arrangement of hyperplanes inside a subspace U of R^d. Each normal
 * a defines the hyperplane U cap a^perp. Normals are stored canonically:
 * projected into U, primitive, sign-normalized, deduplicated and sorted, so
 * arrangements describing the same set of hyperplanes compare equal by key().
 */
class Arrangement {
public:
    Arrangement(int ambient_dim, const std::vector<Vec>& normals);
    Arrangement(Subspace u, const std::vector<Vec>& normals);

    int ambient_dim() const { return u_.ambient_dim(); }
    /** Dimension of the subspace the arrangement lives in. */
    int dim() const { return u_.dim(); }
    const Subspace& subspace() const { return u_; }
    const std::vector<Vec>& normals() const { return normals_; }
    int size() const { return static_cast<int>(normals_.size()); }

    /** Intersection of all hyperplanes (= U itself when empty). */
    Subspace center() const;
    /** dim U when the arrangement is a single hyperplane, otherwise nothing. */
    std::optional<int> is_singleton() const;
    /** Index of the canonical form of `normal` among normals(), or -1. */
    int find_normal(const Vec& normal) const;

    std::string key() const;
    bool operator==(const Arrangement& other) const { return key() == other.key(); }

private:
    Subspace u_;
    std::vector<Vec> normals_;
};

/**
 * The flats U cap H_1 cap ... of an arrangement, ordered by reverse inclusion
 * (bottom = U, top = the center), with the Moebius function of that order.
 * Flats are sorted by decreasing dimension, so bottom() == 0 and
 * top() == size()-1.
 */
class FlatsLattice {
public:
    int size() const { return static_cast<int>(flats_.size()); }
    const Subspace& flat(int i) const { return flats_[static_cast<size_t>(i)]; }
    int bottom() const { return 0; }
    int top() const { return size() - 1; }
    /** Reverse inclusion: i <= j iff flat(i) contains flat(j). */
    bool leq(int i, int j) const { return poset_.leq(i, j); }
    const Integer& mobius(int i, int j) const { return poset_.mobius(i, j); }
    const Poset& poset() const { return poset_; }
    int index_of(const Subspace& s) const;
    std::vector<int> of_dim(int k) const;

    friend FlatsLattice flats_lattice(const Arrangement& a);

private:
    FlatsLattice(std::vector<Subspace> flats, Poset poset);
    std::vector<Subspace> flats_;
    Poset poset_;
    std::map<std::string, int> index_;
};

FlatsLattice flats_lattice(const Arrangement& a);

/** Integer polynomial in t; coeff[k] multiplies t^k. */
struct CharPoly {
    std::vector<Integer> coeff;

    CharPoly() = default;
    explicit CharPoly(int max_degree) : coeff(static_cast<size_t>(max_degree) + 1, Integer(0)) {}

    /** Degree of the polynomial; -1 for the zero polynomial. */
    int degree() const;
    /** Coefficient of t^k (0 when k is out of range). */
    Integer at(int k) const;
    Rational operator()(const Rational& t) const;
    /** Rendered like "t^2 + 3t + 2". */
    std::string to_string() const;
};

bool operator==(const CharPoly& p, const CharPoly& q);
inline bool operator!=(const CharPoly& p, const CharPoly& q) { return !(p == q); }
CharPoly operator+(const CharPoly& p, const CharPoly& q);

/**
 * Unsigned characteristic polynomial from the flats: the coefficient of t^i
 * is the Whitney number w_i = sum of |mu(U, L)| over flats L of dimension i.
 */
CharPoly whitney_numbers(const Arrangement& a);

/**
 * Unsigned characteristic polynomial by deletion/restriction,
 *   ochi(A) = ochi(A minus H) + ochi(A restricted to H),
 * with single-hyperplane arrangements in a k-dimensional subspace as the base
 * case t^k + t^{k-1}. Memoized; rejects the empty arrangement (no base case).
 * Must agree with whitney_numbers exactly.
 */
CharPoly char_poly_delres(const Arrangement& a);

/** Drop the hyperplane with the given normal (which must belong to A). */
Arrangement deletion(const Arrangement& a, const Vec& normal);
/**
 * Restriction of A to the hyperplane H = normal^perp cap U (H must belong to
 * A): the arrangement {K cap H : K in A, K cap H a hyperplane of H} inside H.
 */
Arrangement restriction(const Arrangement& a, const Vec& normal);
/** Localization at a flat L: the hyperplanes of A containing L. */
Arrangement localization(const Arrangement& a, const Subspace& l);

/**
 * The closed regions of the arrangement as a fan in U: closures of the
 * connected components of U minus the hyperplanes, enumerated by feasible
 * strict sign vectors. The empty arrangement yields the single region U.
 */
Fan regions(const Arrangement& a);

/**
 * Deletion/restriction identity for a valuation:
 *   phi(regions(A)) = phi(regions(A minus H)) + phi(regions(A restricted to H)),
 * for H in A and |A| >= 2.
 */
template <class Phi, class Eq>
CheckReport check_deletion_restriction(Phi&& phi, const Arrangement& a, const Vec& normal, Eq&& eq) {
    if (a.size() < 2) throw std::invalid_argument("deletion/restriction needs at least two hyperplanes");
    auto lhs = evaluate(phi, regions(a));
    auto rhs = evaluate(phi, regions(deletion(a, normal))) + evaluate(phi, regions(restriction(a, normal)));
    CheckReport r;
    r.ok = eq(lhs, rhs);
    r.detail = "phi(regions) = " + detail::value_repr(lhs) + ", deletion + restriction gives " +
               detail::value_repr(rhs);
    return r;
}

template <class Phi>
CheckReport check_deletion_restriction(Phi&& phi, const Arrangement& a, const Vec& normal) {
    return check_deletion_restriction(std::forward<Phi>(phi), a, normal,
                                      [](const auto& x, const auto& y) { return x == y; });
}

/**
 * Whitney-number decomposition of a valuation of the arrangement fan. Given
 * b[k-1] = phi(fan of a k-singleton) for k = 1..dim U, the coefficients
 * a_{k-1} = sum_{i=k..d} (-1)^{k-i} b_i satisfy
 *   phi(regions(A)) = sum_i a_i w_i(A).
 */
template <class V, class Phi, class Eq>
CheckReport whitney_decomposition_check(Phi&& phi, const Arrangement& a, const std::vector<V>& b, Eq&& eq) {
    const int d = a.dim();
    if (static_cast<int>(b.size()) != d)
        throw std::invalid_argument("need one singleton value per dimension 1..dim U");
    V lhs = evaluate(phi, regions(a));
    const CharPoly w = whitney_numbers(a);
    V rhs{};
    for (int k = 1; k <= d; ++k) {
        V ak{};  // a_{k-1}
        int sign = +1;
        for (int i = k; i <= d; ++i) {
            ak = sign > 0 ? ak + b[static_cast<size_t>(i - 1)] : ak - b[static_cast<size_t>(i - 1)];
            sign = -sign;
        }
        rhs = rhs + ak * w.at(k - 1).convert_to<long long>();
    }
    CheckReport r;
    r.ok = eq(lhs, rhs);
    r.detail = "phi(regions) = " + detail::value_repr(lhs) + ", Whitney decomposition gives " +
               detail::value_repr(rhs);
    return r;
}

}  // namespace conival
