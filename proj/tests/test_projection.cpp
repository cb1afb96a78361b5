#include "conival/projection.hpp"

#include "conival/arrangement.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

#include <random>

using namespace conival;
using namespace conival::testing;

namespace {

Cone quadrant2d() { return Cone::from_generators(2, {iv({1, 0}), iv({0, 1})}); }

/** Random point of the cone: nonnegative combination of rays plus lineality. */
Vec random_cone_point(std::mt19937_64& rng, const Cone& c) {
    std::uniform_int_distribution<long long> nonneg(0, 4), any(-4, 4);
    Vec p = zero_vec(c.ambient_dim());
    for (const Vec& r : c.rays()) p += Rational(nonneg(rng)) * r;
    for (const Vec& l : c.lineality_basis()) p += Rational(any(rng)) * l;
    return p;
}

}  // namespace

TEST_CASE("metric projection: hand cases") {
    Cone c = quadrant2d();

    SUBCASE("clamp to a facet") {
        ProjectionResult r = metric_projection(c, iv({3, -2}));
        CHECK(vec_eq(r.point, iv({3, 0})));
        CHECK(r.face.dim == 1);
        CHECK(r.face.cone.contains(iv({1, 0})));
        CHECK(r.distance_sq == 4);
    }

    SUBCASE("points in the polar cone project to the apex") {
        ProjectionResult r = metric_projection(c, iv({-1, -1}));
        CHECK(is_zero_vec(r.point));
        CHECK(r.face.dim == 0);
        CHECK(r.distance_sq == 2);

        Cone wedge = Cone::from_generators(2, {iv({1, 0}), iv({1, 1})});
        ProjectionResult s = metric_projection(wedge, iv({-1, 0}));
        CHECK(is_zero_vec(s.point));
    }

    SUBCASE("interior and boundary points are fixed") {
        ProjectionResult r = metric_projection(c, iv({1, 2}));
        CHECK(vec_eq(r.point, iv({1, 2})));
        CHECK(r.face.dim == 2);
        CHECK(r.distance_sq == 0);

        ProjectionResult s = metric_projection(c, iv({0, 3}));
        CHECK(vec_eq(s.point, iv({0, 3})));
        CHECK(s.face.dim == 1);
    }

    SUBCASE("cones with lineality project onto the minimal face by membership") {
        Cone half = Cone::from_halfspaces(2, {}, {iv({0, 1})});  // y <= 0
        ProjectionResult r = metric_projection(half, iv({1, 1}));
        CHECK(vec_eq(r.point, iv({1, 0})));
        CHECK(r.face.dim == 1);
        CHECK(r.face.cone.is_subspace());

        Cone axis = Cone::from_subspace(Subspace::span(2, {iv({1, 0})}));
        ProjectionResult s = metric_projection(axis, iv({2, 5}));
        CHECK(vec_eq(s.point, iv({2, 0})));
        CHECK(s.face.cone.equal(axis));
    }

    SUBCASE("degenerate cones") {
        ProjectionResult r = metric_projection(Cone::zero_cone(3), iv({1, 2, 3}));
        CHECK(is_zero_vec(r.point));
        CHECK(r.distance_sq == 14);
        ProjectionResult s = metric_projection(Cone::full_space(3), iv({1, 2, 3}));
        CHECK(vec_eq(s.point, iv({1, 2, 3})));
    }

    CHECK_THROWS_AS(metric_projection(c, iv({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("metric projection: randomized invariants") {
    std::mt19937_64 rng(512);
    std::uniform_int_distribution<long long> coord(-6, 6);

    for (int trial = 0; trial < 12; ++trial) {
        const int d = 3;
        Cone c;
        switch (trial % 3) {
            case 0: c = random_simplicial_cone(rng, d); break;
            case 1: c = Cone::from_generators(d, {random_int_vec(rng, d), random_int_vec(rng, d)}); break;
            default:
                c = Cone::from_generators(d, {random_int_vec(rng, d)}, {random_int_vec(rng, d)});
                break;
        }
        const FaceLattice lat = face_lattice(c);
        const Cone polar = c.polar();

        Vec prev_x, prev_face_point;
        std::string prev_face_key;
        for (int k = 0; k < 8; ++k) {
            Vec x(d);
            for (int i = 0; i < d; ++i) x(i) = Rational(coord(rng));
            ProjectionResult r = metric_projection(lat, x);

            // fixed points are exactly the cone points
            CHECK(c.contains(r.point));
            CHECK((c.contains(x) == vec_eq(r.point, x)));

            // Moreau decomposition: x = pi_C(x) + pi_polar(x), orthogonally
            ProjectionResult rp = metric_projection(polar, x);
            CHECK(vec_eq(r.point + rp.point, x));
            CHECK(r.point.dot(rp.point) == 0);

            // idempotence
            CHECK(vec_eq(metric_projection(lat, r.point).point, r.point));

            // minimality against sampled cone points
            for (int s = 0; s < 5; ++s) {
                Vec z = random_cone_point(rng, c);
                CHECK(r.distance_sq <= (x - z).dot(x - z));
            }

            // additivity of the face assignment
            if (k > 0 && prev_face_key == r.face.cone.key()) {
                ProjectionResult sum = metric_projection(lat, Vec(x + prev_x));
                CHECK(sum.face.cone.key() == prev_face_key);
            }
            prev_x = x;
            prev_face_key = r.face.cone.key();
        }
    }
}

TEST_CASE("Moreau cells") {
    Cone c = quadrant2d();
    const FaceLattice lat = face_lattice(c);

    SUBCASE("hand cells of the quadrant") {
        CHECK(pi_F(c, lat.face(lat.minimum())).equal(Cone::from_generators(2, {iv({-1, 0}), iv({0, -1})})));
        CHECK(pi_F(c, lat.face(lat.maximum())).equal(c));
        for (int i : lat.faces_of_dim(1)) {
            Cone cell = pi_F(c, lat.face(i));
            CHECK(cell.is_full_dimensional());
            CHECK(cell.contains(lat.face(i).cone));
        }
        // the x-axis ray gives the fourth quadrant
        for (int i : lat.faces_of_dim(1))
            if (lat.face(i).cone.contains(iv({1, 0})))
                CHECK(pi_F(c, lat.face(i)).equal(Cone::from_generators(2, {iv({1, 0}), iv({0, -1})})));
    }

    SUBCASE("the Moreau fan of the quadrant is the coordinate-line fan") {
        Fan mf = moreau_fan(c);
        Fan quads = regions(Arrangement(2, {iv({1, 0}), iv({0, 1})}));
        REQUIRE(mf.size() == 4);
        for (int i = 0; i < 4; ++i) CHECK(mf.cone(i).equal(quads.cone(i)));
    }

    SUBCASE("halfline, halfplane, subspace") {
        Fan half = moreau_fan(Cone::from_generators(1, {iv({1})}));
        CHECK(half.size() == 2);

        Fan halfplane = moreau_fan(Cone::from_halfspaces(2, {}, {iv({0, 1})}));
        REQUIRE(halfplane.size() == 2);
        CHECK(halfplane.contains_cone(Cone::from_halfspaces(2, {}, {iv({0, 1})})));
        CHECK(halfplane.contains_cone(Cone::from_halfspaces(2, {}, {iv({0, -1})})));

        Fan line = moreau_fan(Cone::from_subspace(Subspace::span(3, {iv({1, 1, 0})})));
        REQUIRE(line.size() == 1);
        CHECK(line.cone(0).equal(Cone::full_space(3)));
    }

    SUBCASE("random simplicial cone in R^3: one cell per face, validated") {
        std::mt19937_64 rng(77);
        Cone s = random_simplicial_cone(rng, 3);
        Fan mf = moreau_fan(s);
        CHECK(mf.size() == face_lattice(s).size());
    }
}

TEST_CASE("interval posets") {
    SUBCASE("chain of two elements") {
        Poset chain(2, [](int i, int j) { return i <= j; });
        IntervalPoset ip = interval_poset(chain);
        REQUIRE(ip.intervals.size() == 3);
        auto bot = ip.poset.bottom();
        REQUIRE(bot.has_value());
        CHECK(ip.intervals[static_cast<size_t>(*bot)] == std::pair<int, int>(0, 1));
        int maximal = 0;
        for (int i = 0; i < ip.poset.size(); ++i) {
            bool is_max = true;
            for (int j = 0; j < ip.poset.size(); ++j)
                if (ip.poset.lt(i, j)) is_max = false;
            if (is_max) {
                ++maximal;
                CHECK(ip.intervals[static_cast<size_t>(i)].first == ip.intervals[static_cast<size_t>(i)].second);
            }
        }
        CHECK(maximal == 2);
    }

    SUBCASE("face lattice of a ray has three intervals") {
        IntervalPoset ip = interval_poset(face_poset(face_lattice(Cone::from_generators(1, {iv({1})}))));
        CHECK(ip.intervals.size() == 3);
    }

    SUBCASE("one-element poset has a single interval") {
        Poset single(1, [](int, int) { return true; });
        CHECK(interval_poset(single).intervals.size() == 1);
    }

    SUBCASE("quadrant face lattice has nine intervals") {
        CHECK(interval_poset(face_poset(face_lattice(quadrant2d()))).intervals.size() == 9);
    }
}

TEST_CASE("Moreau fan face poset is the interval poset of the face lattice") {
    SUBCASE("quadrant: nine faces") {
        CheckReport r = check_moreau_isomorphism(quadrant2d());
        CHECK(r.ok);
        CHECK(r.detail.find("9") != std::string::npos);
    }

    SUBCASE("halfline in R^1") {
        CHECK(check_moreau_isomorphism(Cone::from_generators(1, {iv({1})})).ok);
    }

    SUBCASE("halfplane and subspace") {
        CHECK(check_moreau_isomorphism(Cone::from_halfspaces(2, {}, {iv({0, 1})})).ok);
        CHECK(check_moreau_isomorphism(Cone::from_subspace(Subspace::span(3, {iv({1, 0, 1})}))).ok);
    }

    SUBCASE("octant: 27 faces") {
        CheckReport r = check_moreau_isomorphism(Cone::from_generators(
            3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}));
        CHECK(r.ok);
        CHECK(r.detail.find("27") != std::string::npos);
    }

    SUBCASE("random simplicial cone in R^3") {
        std::mt19937_64 rng(2024);
        CHECK(check_moreau_isomorphism(random_simplicial_cone(rng, 3, 3)).ok);
    }
}
