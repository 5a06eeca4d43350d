#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "escortlab/deck.hpp"

using namespace escortlab;

TEST_CASE("moebius scaling acts as z -> lambda^2 z on the half-plane") {
    auto g = moebius_scaling(upper_half_plane(), 2.0);
    auto p = make_point(upper_half_plane(), {0.0, 1.0});
    auto q = deck_apply(g, p);
    CHECK(q.x[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(q.x[1] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(distance(p, q) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("deck transformations are isometries") {
    std::vector<DeckTransformation> gs = {
        moebius(upper_half_plane(), {1.0, 1.0, 0.0, 1.0}),
        moebius(upper_half_plane(), {2.0, 0.3, -0.5, 0.425}),
        moebius_scaling(poincare_disk(), 1.7),
        x_shift(warped_xy(), 2.5),
        lattice_translation(flat_torus_cover(2), {1.0, -2.0}),
    };
    std::vector<ModelPoint> ps = {
        make_point(upper_half_plane(), {0.3, 2.0}),
        make_point(upper_half_plane(), {-1.0, 0.25}),
        make_point(poincare_disk(), {0.4, -0.2}),
        make_point(warped_xy(), {1.0, -0.5}),
        make_point(flat_torus_cover(2), {0.6, 0.1}),
    };
    std::vector<ModelPoint> qs = {
        make_point(upper_half_plane(), {-0.7, 0.5}),
        make_point(upper_half_plane(), {2.0, 3.0}),
        make_point(poincare_disk(), {-0.1, 0.6}),
        make_point(warped_xy(), {-2.0, 1.5}),
        make_point(flat_torus_cover(2), {-0.4, 2.3}),
    };
    for (std::size_t i = 0; i < gs.size(); ++i) {
        double d0 = distance(ps[i], qs[i]);
        double d1 = distance(deck_apply(gs[i], ps[i]), deck_apply(gs[i], qs[i]));
        CHECK(d1 == doctest::Approx(d0).epsilon(1e-10));
    }
}

TEST_CASE("deck transformations preserve vector norms and angles") {
    auto g = moebius(upper_half_plane(), {1.2, 0.4, -0.3, (1.0 + 0.4 * 0.3) / 1.2});
    auto base = make_point(upper_half_plane(), {0.5, 1.5});
    ModelVector u(base, {1.0, 0.3});
    ModelVector w(base, {-0.2, 0.9});
    auto gu = deck_apply(g, u);
    auto gw = deck_apply(g, w);
    CHECK(norm(gu) == doctest::Approx(norm(u)).epsilon(1e-10));
    CHECK(angle_between(gu, gw) == doctest::Approx(angle_between(u, w)).epsilon(1e-9));
}

TEST_CASE("group laws: compose, inverse, powers") {
    auto g = moebius(upper_half_plane(), {1.0, 1.0, 0.0, 1.0});
    auto h = moebius_scaling(upper_half_plane(), 1.5);
    auto p = make_point(upper_half_plane(), {0.2, 0.7});

    auto gh = deck_compose(g, h);
    auto lhs = deck_apply(gh, p);
    auto rhs = deck_apply(g, deck_apply(h, p));
    CHECK(distance(lhs, rhs) < 1e-12);

    auto id = deck_compose(g, deck_inverse(g));
    CHECK(distance(deck_apply(id, p), p) < 1e-12);

    auto g3 = deck_pow(g, 3);
    auto q = deck_apply(g3, p);
    CHECK(q.x[0] == doctest::Approx(p.x[0] + 3.0).epsilon(1e-13));

    auto gm2 = deck_pow(g, -2);
    CHECK(deck_apply(gm2, p).x[0] == doctest::Approx(p.x[0] - 2.0).epsilon(1e-13));
}

TEST_CASE("lattice lift of a torus orbit accumulates the right word") {
    // base orbit on the 2-torus: x -> x + (0.3, 0.1) mod 1, projected samples
    auto cover = flat_torus_cover(2);
    std::vector<DeckTransformation> gens = {lattice_translation(cover, {1.0, 0.0}),
                                            lattice_translation(cover, {0.0, 1.0})};
    std::vector<ModelPoint> base;
    for (int n = 0; n <= 10; ++n) {
        double x = std::fmod(0.3 * n, 1.0);
        double y = std::fmod(0.1 * n, 1.0);
        base.push_back(make_point(cover, {x, y}));
    }
    auto lifted = lift_orbit(cover, gens, base, 0.49);
    REQUIRE(lifted.points.size() == 11);
    CHECK(lifted.points[10].x[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(lifted.points[10].x[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lifted.words[10][0] == 3);
    CHECK(lifted.words[10][1] == 1);
}

TEST_CASE("lift_orbit raises LiftError on an over-large base step") {
    auto cover = flat_torus_cover(1);
    std::vector<DeckTransformation> gens = {lattice_translation(cover, {1.0})};
    std::vector<ModelPoint> base = {make_point(cover, {0.0}), make_point(cover, {0.45})};
    CHECK_THROWS_AS(lift_orbit(cover, gens, base, 0.2), LiftError);
}

TEST_CASE("moebius action extends to every hyperbolic chart consistently") {
    auto g_hp = moebius_scaling(upper_half_plane(), 2.0);
    for (auto target : {poincare_disk(), fermi_strip(), hyperbolic_polar()}) {
        auto g = moebius_scaling(target, 2.0);
        auto p_hp = make_point(upper_half_plane(), {0.4, 1.3});
        auto p = from_half_plane(target, p_hp);
        auto moved = deck_apply(g, p);
        auto expect = from_half_plane(target, deck_apply(g_hp, p_hp));
        CHECK(distance(moved, expect) < 1e-9);
    }
}
