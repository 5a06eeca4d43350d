#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "escortlab/ergodic.hpp"

using namespace escortlab;

namespace {

OrbitGenerator torus_rotation(std::size_t seeds) {
    OrbitGenerator gen;
    gen.step = [](std::size_t, const State& s, std::size_t) {
        return State{std::fmod(s[0] + 0.3, 1.0), std::fmod(s[1] + 0.1, 1.0)};
    };
    gen.embed = [](const State& s) { return make_point(flat_torus_cover(2), {s[0], s[1]}); };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < seeds; ++i) gen.seeds.push_back({u(rng), u(rng)});
    gen.rng_seed = 7;
    return gen;
}

OrbitGenerator geodesic_doubling() {
    // state = ln y on the imaginary axis; step multiplies y by 4
    OrbitGenerator gen;
    gen.step = [](std::size_t, const State& s, std::size_t) {
        return State{s[0] + std::log(4.0)};
    };
    gen.embed = [](const State& s) {
        return make_point(upper_half_plane(), {0.0, std::exp(s[0])});
    };
    gen.seeds = {{0.0}, {1.0}, {-0.5}};
    return gen;
}

}  // namespace

TEST_CASE("generate_orbit is deterministic and well-formed") {
    auto gen = torus_rotation(3);
    auto a = generate_orbit(gen, 1, 20);
    auto b = generate_orbit(gen, 1, 20);
    REQUIRE(a.points.size() == 21);
    for (std::size_t k = 0; k < a.points.size(); ++k) {
        CHECK(a.points[k].x[0] == b.points[k].x[0]);
        CHECK(a.points[k].x[1] == b.points[k].x[1]);
        CHECK(a.times[k] == double(k));
    }
}

TEST_CASE("Birkhoff average of a constant observable is that constant") {
    auto gen = torus_rotation(2);
    auto curves = birkhoff_average(gen, [](const State&) { return 3.5; }, 50);
    REQUIRE(curves.size() == 2);
    for (auto& c : curves)
        for (double m : c) CHECK(m == doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("Birkhoff average of a telescoping observable converges") {
    // obs = increment of a coboundary-plus-drift: mean tends to the drift
    auto gen = geodesic_doubling();
    auto curves = birkhoff_average(
        gen, [](const State& s) { return std::log(4.0) + std::sin(s[0]) * 0.0; }, 100);
    for (auto& c : curves) CHECK(c.back() == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("Birkhoff average of the first torus coordinate tends to 1/2") {
    // irrational rotation: equidistribution gives mean 1/2
    OrbitGenerator gen;
    double alpha = std::sqrt(2.0) - 1.0, beta = std::sqrt(3.0) - 1.0;
    gen.step = [alpha, beta](std::size_t, const State& s, std::size_t) {
        return State{std::fmod(s[0] + alpha, 1.0), std::fmod(s[1] + beta, 1.0)};
    };
    gen.embed = [](const State& s) { return make_point(flat_torus_cover(2), {s[0], s[1]}); };
    gen.seeds = {{0.2, 0.7}, {0.9, 0.05}};
    auto curves = birkhoff_average(gen, [](const State& s) { return s[0]; }, 4000);
    for (auto& c : curves) CHECK(c.back() == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("kingman rate of the doubling orbit is ln 4") {
    auto gen = geodesic_doubling();
    auto est = kingman_rate(gen, 300);
    CHECK(est.ensemble_mean == doctest::Approx(std::log(4.0)).epsilon(1e-9));
    for (double r : est.per_seed_R) CHECK(r == doctest::Approx(std::log(4.0)).epsilon(1e-9));
    CHECK(est.cesaro_curve.back() == doctest::Approx(std::log(4.0)).epsilon(1e-9));
    CHECK(est.stationarity_violation < 1e-9);
}

TEST_CASE("kingman rate of a bounded orbit is zero") {
    auto gen = torus_rotation(3);
    auto est = kingman_rate(gen, 500);
    CHECK(std::abs(est.ensemble_mean) < 0.01);
}

TEST_CASE("alignment ensemble: single hyperbolic translation aligns every seed") {
    auto gen = geodesic_doubling();
    auto rep = alignment_ensemble_check(gen, 200, 0.1);
    CHECK(rep.fraction == doctest::Approx(1.0));
    for (auto& s : rep.per_seed) {
        CHECK(s.escaping);
        CHECK(s.aligned);
        CHECK(s.R_hat == doctest::Approx(std::log(4.0)).epsilon(1e-6));
    }
}

TEST_CASE("alignment ensemble: bounded orbits are not counted as escaping") {
    auto gen = torus_rotation(3);
    auto rep = alignment_ensemble_check(gen, 200, 0.1);
    for (auto& s : rep.per_seed) CHECK_FALSE(s.escaping);
    CHECK(rep.fraction == doctest::Approx(1.0));  // vacuous: 1 when none escape
}
