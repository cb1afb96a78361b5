#pragma once

#include "conival/cone.hpp"

#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace conival {

/** Outcome of a single identity check: verdict plus a readable account. */
struct CheckReport {
    bool ok = false;
    std::string detail;
};

/** Which side of the hyperplane a^perp to intersect with. */
enum class Side { le, ge, eq };

/**
 * A fan: finitely many cones with a common linear hull, any two of which
 * intersect in a common face. The shared linear hull, the shared lineality
 * space (which the face condition forces to be common) and the rank
 * dim - dim lineality are cached on construction.
 *
 * Cones are stored sorted by canonical key, so equal fans compare equal
 * elementwise. The empty fan is a legal value; its linear hull, lineality and
 * rank are undefined and the accessors throw.
 */
class Fan {
public:
    explicit Fan(int ambient_dim) : ambient_(ambient_dim) {}

    /**
     * Build without the pairwise face check, for collections that are fans by
     * construction (arrangement regions, halfspace restrictions of fans).
     * Duplicate cones and linear-hull mismatches still throw: those guard the
     * callers' correctness arguments.
     */
    static Fan unchecked(int ambient_dim, std::vector<Cone> cones);

    int ambient_dim() const { return ambient_; }
    int size() const { return static_cast<int>(cones_.size()); }
    bool empty() const { return cones_.empty(); }
    const std::vector<Cone>& cones() const { return cones_; }
    const Cone& cone(int i) const { return cones_[static_cast<size_t>(i)]; }

    const Subspace& lin_hull() const;
    const Subspace& lineality() const;
    int dim() const { return lin_hull().dim(); }
    int rank() const { return dim() - lineality().dim(); }

    bool contains_cone(const Cone& c) const;

private:
    int ambient_ = 0;
    std::vector<Cone> cones_;
    std::vector<Subspace> hulls_;  // [0] = linear hull, [1] = lineality, when nonempty
};

/**
 * Check the fan axioms on a set of cones and return the fan: every pairwise
 * intersection must be a face of both cones and all linear hulls must agree.
 * Throws std::invalid_argument naming an offending pair otherwise. Duplicate
 * cones are merged (a fan is a set).
 */
Fan validate_fan(int ambient_dim, std::vector<Cone> cones);

/**
 * The induced fan {C cap S : C in fan, relint(C) cap S nonempty} where S is
 * the halfspace {a.x <= 0} / {a.x >= 0} or the hyperplane a^perp, per `side`.
 * The hyperplane must cut the fan's linear hull properly, i.e. a may not be
 * orthogonal to it. Intersecting the empty fan gives the empty fan.
 */
Fan fan_intersect(const Fan& fan, const Vec& normal, Side side);

/** Sum of phi over the cones of the fan; the empty fan evaluates to zero. */
template <class Phi>
auto evaluate(Phi&& phi, const Fan& fan) {
    using V = std::decay_t<decltype(phi(std::declval<const Cone&>()))>;
    V total{};
    for (const Cone& c : fan.cones()) total = total + phi(c);
    return total;
}

namespace detail {
template <class V>
std::string value_repr(const V& v) {
    if constexpr (requires(std::ostringstream& os) { os << v; }) {
        std::ostringstream os;
        os << v;
        return os.str();
    } else if constexpr (requires { v.to_string(); }) {
        return v.to_string();
    } else {
        return "<value>";
    }
}
}  // namespace detail

/**
 * Test the fan-valuation identity
 *   phi(N) = phi(N cap H^<=) + phi(N cap H^>=) - phi(N cap H)
 * for the hyperplane H = normal^perp, comparing with `eq` (exact == for exact
 * valuations, a tolerance predicate for estimated ones).
 */
template <class Phi, class Eq>
CheckReport check_fan_valuation_identity(Phi&& phi, const Fan& fan, const Vec& normal, Eq&& eq) {
    auto lhs = evaluate(phi, fan);
    auto rhs = evaluate(phi, fan_intersect(fan, normal, Side::le)) +
               evaluate(phi, fan_intersect(fan, normal, Side::ge)) -
               evaluate(phi, fan_intersect(fan, normal, Side::eq));
    CheckReport r;
    r.ok = eq(lhs, rhs);
    r.detail = "phi(fan) = " + detail::value_repr(lhs) + ", split through the hyperplane gives " +
               detail::value_repr(rhs);
    return r;
}

template <class Phi>
CheckReport check_fan_valuation_identity(Phi&& phi, const Fan& fan, const Vec& normal) {
    return check_fan_valuation_identity(std::forward<Phi>(phi), fan, normal,
                                        [](const auto& a, const auto& b) { return a == b; });
}

}  // namespace conival
