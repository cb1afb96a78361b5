#pragma once

// The algebra of indicator functions of polyhedral cones: integer linear
// combinations x -> sum_i c_i [x in C_i] with two ring structures (pointwise
// product and conical-hull product), polarity, the Euler map, the face
// projection elements V_k, exact semantic equality through a common
// refinement arrangement, and the verification routines built on top.

#include "conival/arrangement.hpp"
#include "conival/cone.hpp"
#include "conival/fan.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conival {

/**
 * An integer combination of indicator functions of closed cones in a common
 * ambient space. The term list is merged by cone (zero coefficients dropped,
 * terms sorted by cone key) but is still only one representative of the
 * function it denotes; semantic equality is decided by equal() below.
 */
class IndicatorElement {
public:
    /// The zero function on R^d.
    explicit IndicatorElement(int ambient_dim);

    /// [C], the indicator of a single closed cone.
    static IndicatorElement indicator(const Cone& c);

    /// [R^d], the unit of the pointwise ring.
    static IndicatorElement one(int ambient_dim);

    int ambient_dim() const { return d_; }
    const std::vector<std::pair<Integer, Cone>>& terms() const { return terms_; }

    /// True when the merged term list is empty. (Semantically zero elements
    /// with nonempty term lists exist; use equal() against the zero element.)
    bool trivially_zero() const { return terms_.empty(); }

    void add_term(const Integer& coeff, const Cone& c);

private:
    int d_;
    std::vector<std::pair<Integer, Cone>> terms_;
};

IndicatorElement operator+(const IndicatorElement& f, const IndicatorElement& g);
IndicatorElement operator-(const IndicatorElement& f, const IndicatorElement& g);
IndicatorElement operator-(const IndicatorElement& f);
IndicatorElement operator*(const Integer& c, const IndicatorElement& f);

/// Exact value of f at x.
Integer evaluate(const IndicatorElement& f, const Vec& x);

/// Bilinear extension of [C] . [C'] = [C intersect C'].
IndicatorElement pointwise_product(const IndicatorElement& f, const IndicatorElement& g);

/// Bilinear extension of [C] * [C'] = [C + C'] (conical hull of the union).
IndicatorElement star_product(const IndicatorElement& f, const IndicatorElement& g);

/// Termwise polar: [C] -> [C polar]. A linear involution that swaps the two
/// ring structures on cone pairs with convex union.
IndicatorElement polar_map(const IndicatorElement& f);

/**
 * The Euler map, the linear extension of [C] -> (-1)^dim(C) [relint C].
 * Open cones are expanded over closed faces immediately, which collapses to
 * the face sum  E([C]) = sum_{F face of C} (-1)^dim(F) [F];
 * it is an involution on the whole group.
 */
IndicatorElement euler_map(const IndicatorElement& f);

/**
 * sum over the face lattice of (-1)^dim(F). For a cone this is (-1)^dim(C)
 * when C is a subspace and 0 otherwise; both the face sum and that closed
 * form are computed and cross-checked.
 */
Integer euler_characteristic(const Cone& c);

/// V_k(C) = sum over k-faces F of [F + N_F C]. Zero element when C has no
/// k-dimensional faces (k < dim lineal(C) or k > dim C).
IndicatorElement vk(const Cone& c, int k);

/// Sum of vk over the closed regions of the arrangement.
IndicatorElement vk_arrangement(const Arrangement& a, int k);

/**
 * A decided normal form: a refinement arrangement whose hyperplanes support
 * every facet and every lin-hull complement of every term, plus the constant
 * value of the element on each nonempty relatively open sign cell. Elements
 * are equal as functions iff their forms over a common refinement agree.
 */
struct CanonicalForm {
    Arrangement refinement;          ///< in R^d with full carrier
    std::vector<std::string> signs;  ///< feasible sign vectors, entries '-','0','+', sorted
    std::vector<Integer> coeff;      ///< value on the corresponding open cell
    std::vector<Vec> witness;        ///< an interior rational point of the cell

    /// Value on the cell with the given sign vector, if that cell is nonempty.
    std::optional<Integer> coefficient(const std::string& sv) const;
};

/// The restriction of a canonical form to full-dimensional cells (no '0'
/// entries): the image under the projection to simple indicator functions.
struct SimpleClass {
    Arrangement refinement;
    std::vector<std::string> signs;
    std::vector<Integer> coeff;
    std::vector<Vec> witness;

    std::optional<Integer> coefficient(const std::string& sv) const;
};

CanonicalForm canonicalize(const IndicatorElement& f);

/// The projection rho to simple indicator functions (almost-everywhere data).
SimpleClass simplify(const IndicatorElement& f);

/// Exact equality as functions on R^d.
bool equal(const IndicatorElement& f, const IndicatorElement& g);

/// Equality almost everywhere (agreement on all full-dimensional cells).
bool simple_equal(const IndicatorElement& f, const IndicatorElement& g);

/**
 * Inverse of C -> {F + N_F C : F a k-face of C} up to the documented fiber.
 * Applies the polar reduction when 2k > d, then identifies the free k-faces
 * of the inputs (those that are not pairwise intersections of inputs) and
 * returns their conical hull; single-input data is resolved through the
 * pointed part of the input. The candidate's own k-face data is recomputed
 * and must reproduce the input exactly, else std::invalid_argument. 2k = d is
 * rejected up front: a cone and its polar then have identical data.
 */
Cone recover_cone(const std::vector<Cone>& pi_cones, int k, int d);

/**
 * The exceptional arrangement Pi(A): for every flat L and every hyperplane
 * trace of A on L, the hyperplane (H intersect L) + L^perp of R^d; these are
 * exactly the kernels of the projections of the normals of A onto the flats.
 * V_k of the arrangement exceeds the Whitney number w_k somewhere iff the
 * point lies on one of these hyperplanes.
 */
Arrangement exceptional_arrangement(const Arrangement& a);

/**
 * Checks, at the point x, the equivalence of three descriptions of
 * exceptional points: membership in some hyperplane of Pi(A); failure of
 * strict distance monotonicity d_{L'}(x) > d_L(x) over all strict flat
 * inclusions L' < L; and its restriction-trace form. ok reports whether the
 * three agree at x; the detail says whether x is generic.
 */
CheckReport genericity_check(const Arrangement& a, const Vec& x);

/// V_k is a valuation under a hyperplane split, as simple indicator functions.
CheckReport verify_vk_valuation(const Cone& c, const Vec& hyperplane_normal, int k);

/// V_k(C) = V_{d-k}(C polar), exactly.
CheckReport verify_polar_duality(const Cone& c, int k);

/// sum of region indicators = sum over flats of |mobius(bottom, L)| [L], exactly.
CheckReport lemma_key_check(const Arrangement& a);

/// The flat-expansion of V_k(A) as a double Mobius sum, exactly.
CheckReport theorem_vk_arr_check(const Arrangement& a, int k);

/// euler_characteristic(C) [R^d] = sum over faces of (-1)^dim(F) [F - N_F C].
CheckReport hug_kabluchko_check(const Cone& c);

/// Sommerville relation: sum over faces of (-1)^dim(G) [T_G D] equals the
/// Euler map applied to [-D].
CheckReport sommerville_check(const Cone& d);

/// Coefficientwise data of the indicator-valued polynomial of a fan: for each
/// k the element sum_C vk(C, k) and its simple class.
struct IndicatorCharPoly {
    std::vector<IndicatorElement> coeff;
    std::vector<SimpleClass> classes;
};

IndicatorCharPoly indicator_char_poly(const Fan& fan);

/// For region fans of arrangements the k-th simple class collapses to
/// w_k . rho([R^d]); checked coefficient by coefficient.
CheckReport klivans_swartz_indicator_check(const Arrangement& a);

/**
 * Monte Carlo value of the linear extension of the spherical volume to
 * simple indicator functions: the mean of the class over Gaussian directions
 * (samples on the dyadic grid; draws landing on a refinement hyperplane are
 * redrawn). rho([R^d]) integrates to 1, halfspaces to 1/2.
 */
double spherical_volume(const SimpleClass& s, long long samples, std::uint64_t seed);

}  // namespace conival
