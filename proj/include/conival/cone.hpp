#pragma once

#include "conival/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace conival {

/**
 * Closed convex polyhedral cone in Q^d, kept in both descriptions:
 *
 *   V-rep:  cone(rays) + span(lineality)
 *   H-rep:  {x : e.x = 0 for equations e,  a.x <= 0 for inequalities a}
 *
 * A cone can be built from either description; the other is derived lazily
 * via the double description method and cached. Both cached representations
 * are canonical:
 *   - lineality: RREF basis of the lineality space,
 *   - rays: primitive integer vectors orthogonal to the lineality space,
 *     sorted; exactly one generator per extreme ray,
 *   - equations: RREF basis of lin(C)^perp,
 *   - inequalities: primitive facet normals inside lin(C), sorted; one per
 *     facet (implicit equalities are folded into the equations),
 * so two cones are equal iff their canonical representations coincide
 * syntactically. Handles are cheap to copy (shared immutable state) and lazy
 * fills are mutex-guarded, hence safe under concurrent reads.
 */
class Cone {
public:
    Cone() = default;

    static Cone from_generators(int ambient_dim, std::vector<Vec> rays, std::vector<Vec> lineality = {});
    static Cone from_halfspaces(int ambient_dim, std::vector<Vec> equations, std::vector<Vec> inequalities);
    /** From both descriptions at once; throws std::invalid_argument if they disagree. */
    static Cone from_both(int ambient_dim, std::vector<Vec> rays, std::vector<Vec> lineality,
                          std::vector<Vec> equations, std::vector<Vec> inequalities);
    static Cone zero_cone(int ambient_dim);
    static Cone full_space(int ambient_dim);
    static Cone from_subspace(const Subspace& s);

    bool valid() const { return data_ != nullptr; }
    int ambient_dim() const;
    int dim() const;
    int lineality_dim() const;
    bool is_subspace() const { return dim() == lineality_dim(); }
    bool is_pointed() const { return lineality_dim() == 0; }
    bool is_full_dimensional() const { return dim() == ambient_dim(); }

    const std::vector<Vec>& rays() const;
    const std::vector<Vec>& lineality_basis() const;
    const std::vector<Vec>& equations() const;
    const std::vector<Vec>& inequalities() const;

    Subspace lin_hull() const;
    Subspace lineality_space() const;

    bool contains(const Vec& x) const;
    bool relint_contains(const Vec& x) const;
    bool contains(const Cone& other) const;
    /** A point in the relative interior (sum of the canonical rays; 0 for subspaces). */
    Vec relint_point() const;

    /** Canonical identity string; equal cones have equal keys. */
    const std::string& key() const;
    bool equal(const Cone& other) const;

    Cone polar() const;
    Cone negate() const;

private:
    struct Data;
    std::shared_ptr<Data> data_;
    explicit Cone(std::shared_ptr<Data> d) : data_(std::move(d)) {}
    const Data& checked() const;
};

Cone intersect(const Cone& c, const Cone& d);
Cone minkowski_sum(const Cone& c, const Cone& d);

/** Exact test: is e a face of c? (e = {} never arises; cones are nonempty.) */
bool is_face_of(const Cone& e, const Cone& c);

/** Face of a cone, identified by its closed active set among the parent's canonical inequalities. */
struct Face {
    Cone cone;
    std::vector<int> active;  // indices into parent.inequalities(), closed under implication
    int dim = -1;
};

/**
 * The full face lattice, enumerated by active-set search from the canonical
 * facet description. Faces are ordered by (dim, key); containment is the
 * reverse containment of active sets.
 */
class FaceLattice {
public:
    const Cone& parent() const { return parent_; }
    const std::vector<Face>& faces() const { return faces_; }
    int size() const { return static_cast<int>(faces_.size()); }
    const Face& face(int i) const { return faces_[static_cast<size_t>(i)]; }
    /** face i contained in face j */
    bool leq(int i, int j) const;
    int minimum() const { return min_index_; }  // the lineality space
    int maximum() const { return max_index_; }  // the cone itself
    std::vector<int> faces_of_dim(int k) const;
    /** number of faces per dimension 0..ambient_dim */
    std::vector<int> f_vector() const;

    friend FaceLattice face_lattice(const Cone& c);

private:
    Cone parent_;
    std::vector<Face> faces_;
    int min_index_ = -1, max_index_ = -1;
};

FaceLattice face_lattice(const Cone& c);

/**
 * Normal cone N_F C = cone{active facet normals} + lin(C)^perp for a face F
 * of C taken from C's face lattice.
 */
Cone normal_cone(const Cone& c, const Face& f);

/** Tangent cone T_F C = (N_F C)^polar. */
Cone tangent_cone(const Cone& c, const Face& f);

}  // namespace conival
