#pragma once

#include "conival/cone.hpp"
#include "conival/fan.hpp"
#include "conival/poset.hpp"

#include <utility>
#include <vector>

namespace conival {

/** Exact metric projection of a point onto a cone, with the face it lands in. */
struct ProjectionResult {
    Vec point;            // pi_C(x)
    Face face;            // the unique face holding pi_C(x) in its relative interior
    Rational distance_sq; // |x - pi_C(x)|^2
};

/**
 * Nearest point of C to x, by scanning the faces of C: a face F is accepted
 * iff the orthogonal projection y of x onto lin(F) lies in relint(F) and
 * x - y lies in the normal cone of F. Exactly one face passes (asserted);
 * that face is the projection face F_x.
 */
ProjectionResult metric_projection(const Cone& c, const Vec& x);
/** Same, reusing a precomputed face lattice. */
ProjectionResult metric_projection(const FaceLattice& lat, const Vec& x);

/** The Moreau cell of a face, F + N_F C; always full-dimensional. */
Cone pi_F(const Cone& c, const Face& f);

/**
 * The Moreau fan {F + N_F C : F face of C}: a complete fan of R^d. The fan
 * axioms and completeness (every region of the arrangement of all cell
 * facets lies in some cell) are verified on construction.
 */
Fan moreau_fan(const Cone& c);

/** The face lattice as a plain poset (indices match lat.face(i)). */
Poset face_poset(const FaceLattice& lat);

/**
 * All nonempty intervals [a, c] of a finite poset, ordered by reverse
 * inclusion: [a, c] <= [a', c'] iff a <= a' and c' <= c. The singleton
 * intervals are the maximal elements; for a bounded source the full interval
 * is the unique minimum.
 */
struct IntervalPoset {
    std::vector<std::pair<int, int>> intervals;
    Poset poset;
};

IntervalPoset interval_poset(const Poset& p);

/**
 * Verify that the face poset of the Moreau fan of C is isomorphic to the
 * interval poset of the face lattice of C, via the explicit map
 * [F, G] -> F + N_G C, and that cells intersect by the face formula
 * Pi_F cap Pi_G = (F cap G) + (N_F C cap N_G C).
 */
CheckReport check_moreau_isomorphism(const Cone& c);

}  // namespace conival
