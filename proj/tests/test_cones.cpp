#include "conival/cone.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <set>

using namespace conival;
using namespace conival::testing;

namespace {

Cone quadrant() { return Cone::from_generators(2, {iv({1, 0}), iv({0, 1})}); }
Cone octant() { return Cone::from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}); }

}  // namespace

TEST_CASE("representation conversion: quadrant") {
    Cone c = quadrant();
    CHECK(c.dim() == 2);
    CHECK(c.lineality_dim() == 0);
    CHECK(c.equations().empty());
    REQUIRE(c.inequalities().size() == 2);
    // canonical facet normals of {x >= 0, y >= 0} are -e1, -e2 (sorted)
    CHECK(vec_eq(c.inequalities()[0], iv({-1, 0})));
    CHECK(vec_eq(c.inequalities()[1], iv({0, -1})));

    Cone h = Cone::from_halfspaces(2, {}, {iv({-1, 0}), iv({0, -1})});
    CHECK(h.equal(c));
    REQUIRE(h.rays().size() == 2);
    CHECK(vec_eq(h.rays()[0], iv({0, 1})));
    CHECK(vec_eq(h.rays()[1], iv({1, 0})));
}

TEST_CASE("redundant input is canonicalized away") {
    Cone c = Cone::from_generators(2, {iv({1, 0}), iv({1, 1}), iv({0, 1}), iv({2, 0})});
    CHECK(c.rays().size() == 2);
    CHECK(c.equal(quadrant()));

    Cone h = Cone::from_halfspaces(2, {}, {iv({-1, 0}), iv({0, -1}), iv({-1, -1})});
    CHECK(h.inequalities().size() == 2);
    CHECK(h.equal(quadrant()));

    // scaled + shuffled generators give the identical canonical key
    Cone s = Cone::from_generators(2, {iv({0, 3}), iv({5, 0})});
    CHECK(s.key() == quadrant().key());
}

TEST_CASE("implicit equalities fold into equations") {
    // {x <= 0, -x <= 0, y <= 0} is the ray (0,-1) inside the line x = 0
    Cone c = Cone::from_halfspaces(2, {}, {iv({1, 0}), iv({-1, 0}), iv({0, 1})});
    CHECK(c.dim() == 1);
    CHECK(c.lineality_dim() == 0);
    CHECK(c.equations().size() == 1);
    CHECK(c.inequalities().size() == 1);
    REQUIRE(c.rays().size() == 1);
    CHECK(vec_eq(c.rays()[0], iv({0, -1})));
}

TEST_CASE("degenerate cones") {
    Cone z = Cone::zero_cone(3);
    CHECK(z.dim() == 0);
    CHECK(z.rays().empty());
    CHECK(z.equations().size() == 3);
    CHECK(z.contains(iv({0, 0, 0})));
    CHECK_FALSE(z.contains(iv({1, 0, 0})));

    Cone full = Cone::full_space(2);
    CHECK(full.dim() == 2);
    CHECK(full.lineality_dim() == 2);
    CHECK(full.inequalities().empty());
    CHECK(full.equations().empty());
    CHECK(full.is_subspace());

    Cone line = Cone::from_subspace(Subspace::span(2, {iv({1, 0})}));
    CHECK(line.is_subspace());
    CHECK(line.dim() == 1);
    CHECK(face_lattice(line).size() == 1);

    Cone half = Cone::from_halfspaces(3, {}, {iv({0, 0, 1})});
    CHECK(half.dim() == 3);
    CHECK(half.lineality_dim() == 2);
    REQUIRE(half.rays().size() == 1);
    CHECK(vec_eq(half.rays()[0], iv({0, 0, -1})));
    CHECK(face_lattice(half).size() == 2);
}

TEST_CASE("membership and relative interior") {
    Cone c = quadrant();
    CHECK(c.contains(iv({2, 3})));
    CHECK(c.contains(iv({0, 0})));
    CHECK_FALSE(c.contains(iv({-1, 2})));
    CHECK(c.relint_contains(iv({1, 1})));
    CHECK_FALSE(c.relint_contains(iv({1, 0})));
    CHECK(c.relint_contains(c.relint_point()));

    Cone edge = Cone::from_generators(2, {iv({1, 0})});
    CHECK(edge.relint_contains(iv({5, 0})));
    CHECK_FALSE(edge.relint_contains(iv({0, 0})));
    CHECK(edge.relint_contains(edge.relint_point()));
}

TEST_CASE("polar duality") {
    Cone c = quadrant();
    Cone p = c.polar();
    REQUIRE(p.rays().size() == 2);
    CHECK(vec_eq(p.rays()[0], iv({-1, 0})));
    CHECK(vec_eq(p.rays()[1], iv({0, -1})));

    CHECK(Cone::zero_cone(3).polar().equal(Cone::full_space(3)));
    CHECK(Cone::full_space(3).polar().equal(Cone::zero_cone(3)));

    Cone xaxis = Cone::from_subspace(Subspace::span(2, {iv({1, 0})}));
    Cone yaxis = Cone::from_subspace(Subspace::span(2, {iv({0, 1})}));
    CHECK(xaxis.polar().equal(yaxis));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        Cone rc = random_simplicial_cone(rng, d);
        CHECK(rc.polar().polar().equal(rc));
        // halfspace-with-lineality variant
        Cone mixed = minkowski_sum(rc, Cone::from_generators(d, {}, {random_int_vec(rng, d)}));
        CHECK(mixed.polar().polar().equal(mixed));
    }
}

TEST_CASE("intersection and Minkowski sum") {
    Cone c = intersect(quadrant(), Cone::from_halfspaces(2, {}, {iv({1, -1})}));  // x <= y
    REQUIRE(c.rays().size() == 2);
    CHECK(vec_eq(c.rays()[0], iv({0, 1})));
    CHECK(vec_eq(c.rays()[1], iv({1, 1})));

    Cone s = minkowski_sum(Cone::from_generators(2, {iv({1, 0})}), Cone::from_generators(2, {iv({0, 1})}));
    CHECK(s.equal(quadrant()));

    Cone ray = Cone::from_generators(2, {iv({1, 2})});
    Cone span = minkowski_sum(ray, ray.negate());
    CHECK(span.is_subspace());
    CHECK(span.dim() == 1);

    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 15; ++trial) {
        Cone a = random_simplicial_cone(rng, 3);
        Cone b = random_simplicial_cone(rng, 3);
        Cone i = intersect(a, b);
        CHECK(a.contains(i));
        CHECK(b.contains(i));
        Cone m = minkowski_sum(a, b);
        CHECK(m.contains(a));
        CHECK(m.contains(b));
        // (A cap B)^polar = A^polar + B^polar
        CHECK(i.polar().equal(minkowski_sum(a.polar(), b.polar())));
    }
}

TEST_CASE("face lattice: orthants") {
    FaceLattice lat2 = face_lattice(quadrant());
    CHECK(lat2.size() == 4);
    auto fv2 = lat2.f_vector();
    CHECK(fv2 == std::vector<int>{1, 2, 1});

    FaceLattice lat3 = face_lattice(octant());
    CHECK(lat3.size() == 8);
    auto fv3 = lat3.f_vector();
    CHECK(fv3 == std::vector<int>{1, 3, 3, 1});

    CHECK(lat3.face(lat3.minimum()).cone.equal(Cone::zero_cone(3)));
    CHECK(lat3.face(lat3.maximum()).cone.equal(octant()));
    for (int i = 0; i < lat3.size(); ++i) {
        CHECK(lat3.leq(lat3.minimum(), i));
        CHECK(lat3.leq(i, lat3.maximum()));
        CHECK(is_face_of(lat3.face(i).cone, octant()));
    }
    // containment matches the active-set order
    for (int i = 0; i < lat3.size(); ++i)
        for (int j = 0; j < lat3.size(); ++j)
            CHECK(lat3.leq(i, j) == lat3.face(j).cone.contains(lat3.face(i).cone));
}

TEST_CASE("is_face_of rejects non-faces") {
    Cone c = quadrant();
    CHECK_FALSE(is_face_of(Cone::from_generators(2, {iv({1, 1})}), c));          // interior ray
    CHECK_FALSE(is_face_of(Cone::from_generators(2, {iv({1, 0}), iv({1, 1})}), c));  // sub-cone, not a face
    CHECK_FALSE(is_face_of(Cone::from_generators(2, {iv({-1, 0})}), c));         // outside
    CHECK(is_face_of(Cone::from_generators(2, {iv({1, 0})}), c));
    CHECK(is_face_of(Cone::zero_cone(2), c));
    CHECK(is_face_of(c, c));

    // subspace cone: only itself is a face
    Cone line = Cone::from_subspace(Subspace::span(2, {iv({1, 0})}));
    CHECK(is_face_of(line, line));
    CHECK_FALSE(is_face_of(Cone::zero_cone(2), line));
}

TEST_CASE("normal and tangent cones") {
    Cone c = quadrant();
    FaceLattice lat = face_lattice(c);

    for (int i = 0; i < lat.size(); ++i) {
        const Face& f = lat.face(i);
        Cone n = normal_cone(c, f);
        CHECK(f.dim + n.dim() == 2);  // dim F + dim N_F C = d
        if (f.cone.equal(Cone::zero_cone(2))) CHECK(n.equal(c.polar()));
        if (f.cone.equal(c)) CHECK(n.equal(Cone::zero_cone(2)));
        if (f.dim == 1 && f.cone.contains(iv({1, 0}))) {
            REQUIRE(n.rays().size() == 1);
            CHECK(vec_eq(n.rays()[0], iv({0, -1})));
        }
        Cone t = tangent_cone(c, f);
        CHECK(t.contains(c));
        if (f.cone.equal(c)) CHECK(t.equal(Cone::full_space(2)));
    }

    // boundary of a halfplane: normal cone is the outward ray
    Cone half = Cone::from_halfspaces(2, {}, {iv({0, 1})});  // y <= 0
    FaceLattice hl = face_lattice(half);
    REQUIRE(hl.size() == 2);
    const Face& boundary = hl.face(hl.minimum());
    CHECK(boundary.dim == 1);
    Cone n = normal_cone(half, boundary);
    REQUIRE(n.rays().size() == 1);
    CHECK(vec_eq(n.rays()[0], iv({0, 1})));

    // subspace: N over the single face is the orthogonal complement
    Cone line = Cone::from_subspace(Subspace::span(2, {iv({1, 0})}));
    FaceLattice ll = face_lattice(line);
    REQUIRE(ll.size() == 1);
    Cone nl = normal_cone(line, ll.face(0));
    CHECK(nl.equal(Cone::from_subspace(Subspace::span(2, {iv({0, 1})}))));
}

TEST_CASE("normal cones biject onto polar faces, order-reversed") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        int d = 2 + static_cast<int>(rng() % 2);
        Cone c = random_simplicial_cone(rng, d, 3);
        FaceLattice lat = face_lattice(c);
        FaceLattice plat = face_lattice(c.polar());

        std::set<std::string> normal_keys, polar_keys;
        std::vector<Cone> normals;
        for (int i = 0; i < lat.size(); ++i) {
            Cone n = normal_cone(c, lat.face(i));
            CHECK(lat.face(i).dim + n.dim() == d);
            normal_keys.insert(n.key());
            normals.push_back(n);
        }
        for (int i = 0; i < plat.size(); ++i) polar_keys.insert(plat.face(i).cone.key());
        CHECK(normal_keys == polar_keys);
        CHECK(normal_keys.size() == static_cast<size_t>(lat.size()));

        // order reversal: F <= G implies N_G contained in N_F
        for (int i = 0; i < lat.size(); ++i)
            for (int j = 0; j < lat.size(); ++j)
                if (lat.leq(i, j)) CHECK(normals[static_cast<size_t>(i)].contains(normals[static_cast<size_t>(j)]));
    }
}

TEST_CASE("equality agrees with mutual containment") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        Cone a = random_simplicial_cone(rng, 3, 3);
        Cone b = random_simplicial_cone(rng, 3, 3);
        bool mutual = a.contains(b) && b.contains(a);
        CHECK(a.equal(b) == mutual);
        CHECK(a.equal(a));
    }
}

TEST_CASE("representation cross-check on construction") {
    CHECK_NOTHROW(Cone::from_both(2, {iv({1, 0}), iv({0, 1})}, {}, {}, {iv({-1, 0}), iv({0, -1})}));
    CHECK_THROWS_AS(Cone::from_both(2, {iv({1, 0})}, {}, {}, {iv({-1, 0}), iv({0, -1})}),
                    std::invalid_argument);
}
