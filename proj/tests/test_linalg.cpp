#include "conival/linalg.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace conival;
using namespace conival::testing;

TEST_CASE("rational parsing and printing") {
    CHECK(rat_from_string("2/4") == rat_from_string("1/2"));
    CHECK(rat_to_string(rat_from_string("2/4")) == "1/2");  // canonical form restored
    CHECK(rat_from_string("-3/6") == make_rational(-1, 2));
    CHECK(make_rational(1, -2) == make_rational(-1, 2));
    CHECK(rat_from_string("7") == Rational(7));
    CHECK_THROWS_AS(rat_from_string("1/0"), parse_error);
    CHECK_THROWS_AS(rat_from_string("x"), parse_error);
    CHECK_THROWS_AS(rat_from_string(""), parse_error);
    CHECK(rational_from_double(0.25) == make_rational(1, 4));
    CHECK(rational_from_double(-1.5) == make_rational(-3, 2));
}

TEST_CASE("primitive vectors") {
    CHECK(vec_eq(primitive(rv({"1/2", "1/3"})), iv({3, 2})));
    CHECK(vec_eq(primitive(iv({4, -6})), iv({2, -3})));
    CHECK(vec_eq(primitive(iv({-2, 4}), /*sign_normalize=*/true), iv({1, -2})));
    CHECK(vec_eq(primitive(iv({0, -5, 0})), iv({0, -1, 0})));
    CHECK_THROWS(primitive(iv({0, 0})));
}

TEST_CASE("rank") {
    Mat id = Mat::Identity(3, 3);
    CHECK(rank_of(id) == 3);
    CHECK(rank_of(Mat::Zero(2, 4)) == 0);
    Mat m(2, 2);
    m << Rational(1), Rational(2), Rational(2), Rational(4);
    CHECK(rank_of(m) == 1);
    Mat f(2, 3);
    f << rat_from_string("1/2"), Rational(0), Rational(1), rat_from_string("1/4"), Rational(0), rat_from_string("1/2");
    CHECK(rank_of(f) == 1);
}

TEST_CASE("rref and kernel") {
    Mat m(2, 3);
    m << Rational(1), Rational(2), Rational(3), Rational(2), Rational(4), Rational(7);
    Rref rr = rref(m);
    CHECK(rr.pivots == std::vector<int>{0, 2});
    CHECK(rr.mat(0, 1) == Rational(2));

    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 1);
    for (const Vec& k : ker) CHECK(is_zero_vec(Vec(m * k)));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
        Mat a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a(i, j) = make_rational(static_cast<long long>(rng() % 11) - 5, 1 + static_cast<long long>(rng() % 3));
        Rref r = rref(a);
        CHECK(static_cast<int>(r.pivots.size()) == rank_of(a));  // two elimination routes agree
        for (const Vec& k : kernel_basis(a)) CHECK(is_zero_vec(Vec(a * k)));
        CHECK(static_cast<int>(kernel_basis(a).size()) == cols - rank_of(a));
    }
}

TEST_CASE("subspace basics") {
    Subspace full = Subspace::full(2);
    CHECK(full.dim() == 2);
    Subspace xaxis = Subspace::span(2, {iv({3, 0})});
    CHECK(xaxis.dim() == 1);
    CHECK(xaxis.contains(iv({-7, 0})));
    CHECK_FALSE(xaxis.contains(iv({1, 1})));
    CHECK(vec_eq(xaxis.basis()[0], iv({1, 0})));  // canonical RREF basis

    Subspace same = Subspace::span(2, {iv({-2, 0}), iv({5, 0})});
    CHECK(xaxis == same);
    CHECK(xaxis.key() == same.key());

    Subspace zero(3);
    CHECK(zero.dim() == 0);
    CHECK(zero.contains(iv({0, 0, 0})));
    CHECK_FALSE(zero.contains(iv({1, 0, 0})));
}

TEST_CASE("subspace projection and complement") {
    Subspace xaxis = Subspace::span(2, {iv({1, 0})});
    CHECK(vec_eq(xaxis.project(iv({1, 1})), iv({1, 0})));
    CHECK(xaxis.distance_sq(iv({1, 1})) == 1);

    Subspace diag = Subspace::span(2, {iv({1, 1})});
    CHECK(vec_eq(diag.project(iv({1, 0})), rv({"1/2", "1/2"})));
    CHECK(diag.distance_sq(iv({1, 0})) == make_rational(1, 2));

    Subspace comp = xaxis.orthogonal_complement();
    CHECK(comp.dim() == 1);
    CHECK(comp.contains(iv({0, 4})));
    CHECK(comp.orthogonal_complement() == xaxis);

    Mat p = diag.projection_matrix();
    CHECK(vec_eq(Vec(p * iv({1, 0})), rv({"1/2", "1/2"})));
    CHECK(vec_eq(Vec(p * iv({2, 2})), iv({2, 2})));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        std::vector<Vec> gens;
        for (int i = 0; i < 2; ++i) gens.push_back(random_int_vec(rng, d));
        Subspace s = Subspace::span(d, gens);
        Subspace c = s.orthogonal_complement();
        CHECK(s.dim() + c.dim() == d);
        for (const Vec& b : s.basis())
            for (const Vec& cb : c.basis()) CHECK(b.dot(cb) == 0);
        Vec x = random_int_vec(rng, d);
        Vec p1 = s.project(x);
        CHECK(s.contains(p1));
        CHECK(c.contains(Vec(x - p1)));  // residual orthogonal to s
        CHECK(vec_eq(Vec(s.projection_matrix() * x), p1));
    }
}

TEST_CASE("subspace lattice identities") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        int d = 3 + static_cast<int>(rng() % 2);
        Subspace s = Subspace::span(d, {random_int_vec(rng, d), random_int_vec(rng, d)});
        Subspace t = Subspace::span(d, {random_int_vec(rng, d), random_int_vec(rng, d)});
        Subspace su = s.sum(t), in = s.intersect(t);
        CHECK(su.dim() + in.dim() == s.dim() + t.dim());
        CHECK(su.contains(s));
        CHECK(su.contains(t));
        CHECK(s.contains(in));
        CHECK(t.contains(in));
    }
}

TEST_CASE("feasibility: hand cases") {
    auto c = [](Vec a, Rel r) { return LinearConstraint{std::move(a), r}; };

    SUBCASE("open quadrant") {
        auto w = feasible(2, {c(iv({-1, 0}), Rel::LT), c(iv({0, -1}), Rel::LT)});
        REQUIRE(w.has_value());
        CHECK((*w)(0) > 0);
        CHECK((*w)(1) > 0);
    }
    SUBCASE("contradictory strict pair") {
        CHECK_FALSE(feasible(1, {c(iv({1}), Rel::LT), c(iv({-1}), Rel::LT)}).has_value());
    }
    SUBCASE("equation forces zero, strict fails") {
        CHECK_FALSE(feasible(1, {c(iv({1}), Rel::EQ), c(iv({-1}), Rel::LT)}).has_value());
        auto w = feasible(1, {c(iv({1}), Rel::EQ), c(iv({-1}), Rel::LE)});
        REQUIRE(w.has_value());
        CHECK((*w)(0) == 0);
    }
    SUBCASE("strict inside a subspace") {
        // x + y = 0, x > 0 is feasible in the line x = -y
        auto w = feasible(2, {c(iv({1, 1}), Rel::EQ), c(iv({-1, 0}), Rel::LT)});
        REQUIRE(w.has_value());
        CHECK((*w)(0) > 0);
        CHECK((*w)(0) + (*w)(1) == 0);
    }
    SUBCASE("weak system always has zero") {
        auto w = feasible(3, {c(iv({1, 2, 3}), Rel::LE), c(iv({-1, -2, -3}), Rel::LE)});
        REQUIRE(w.has_value());
    }
    SUBCASE("empty wedge") {
        // x > 0, x < y, y < x/2: substituting gives x < x/2, impossible for x > 0
        Vec half = rv({"-1/2", "1"});
        CHECK_FALSE(feasible(2, {c(iv({-1, 0}), Rel::LT), c(iv({1, -1}), Rel::LT), c(half, Rel::LT)}).has_value());
    }
}

TEST_CASE("feasibility: randomized witnesses") {
    std::mt19937_64 rng(23);
    int feasible_count = 0;
    for (int trial = 0; trial < 120; ++trial) {
        int d = 2 + static_cast<int>(rng() % 3);
        std::vector<LinearConstraint> cons;
        int n = 2 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            Rel r = (rng() % 3 == 0) ? Rel::EQ : ((rng() % 2) ? Rel::LE : Rel::LT);
            cons.push_back(LinearConstraint{random_int_vec(rng, d, 3), r});
        }
        auto w = feasible(d, cons);
        if (w) {
            ++feasible_count;
            for (const auto& cc : cons) {
                Rational v = cc.a.dot(*w);
                if (cc.rel == Rel::EQ) CHECK(v == 0);
                if (cc.rel == Rel::LE) CHECK(v <= 0);
                if (cc.rel == Rel::LT) CHECK(v < 0);
            }
        } else {
            // Dropping all strict constraints to weak must readmit the origin.
            std::vector<LinearConstraint> weak;
            for (auto cc : cons) {
                if (cc.rel == Rel::LT) cc.rel = Rel::LE;
                weak.push_back(cc);
            }
            CHECK(feasible(d, weak).has_value());
        }
    }
    CHECK(feasible_count > 10);  // the sampler should hit both outcomes
}
