#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "escortlab/escort.hpp"

using namespace escortlab;

namespace {

PointSequence powers_of_four(std::size_t n) {
    // x_k = 4^k i on the half-plane: d(x_0, x_k) = k ln 4 exactly
    std::vector<ModelPoint> pts;
    for (std::size_t k = 0; k <= n; ++k)
        pts.push_back(make_point(upper_half_plane(), {0.0, std::pow(4.0, double(k))}));
    return make_sequence(upper_half_plane(), std::move(pts));
}

}  // namespace

TEST_CASE("cone membership: points on the segment, near it, and far off") {
    auto x = make_point(euclidean(2), {0.0, 0.0});
    auto y = make_point(euclidean(2), {10.0, 0.0});
    CHECK(cone_contains(x, y, make_point(euclidean(2), {4.0, 0.0}), 0.1));
    CHECK(cone_contains(x, y, x, 0.1));
    CHECK(cone_contains(x, y, y, 0.1));
    // slightly off-segment: enters the cone once eps is large enough
    auto z = make_point(euclidean(2), {5.0, 0.4});
    CHECK(cone_contains(x, y, z, 0.5));
    CHECK_FALSE(cone_contains(x, y, z, 0.001));
    // far off the segment: outside even for generous eps
    CHECK_FALSE(cone_contains(x, y, make_point(euclidean(2), {5.0, 8.0}), 0.5));
}

TEST_CASE("cone-chord bound holds with the factor f(eps)") {
    auto x = make_point(upper_half_plane(), {0.0, 1.0});
    auto y = make_point(upper_half_plane(), {0.0, 50.0});
    double eps = 0.2;
    // sample points inside the cone and check d(z, w)^2 <= 4(1-e^-2eps) d(x,z)^2
    for (double a : {0.3, 0.9, 2.1}) {
        for (double b : {3.0, 9.0, 20.0}) {
            auto z = make_point(upper_half_plane(), {a * 0.05, b});
            if (!cone_contains(x, y, z, eps)) continue;
            auto gap = cone_chord_gap(x, y, z, eps);
            CHECK(gap.lhs <= gap.rhs * (1.0 + 1e-9));
        }
    }
    CHECK(escort_f(eps) == doctest::Approx(2.0 * std::sqrt(1.0 - std::exp(-0.4))));
}

TEST_CASE("rate of escape of x_k = 4^k i is ln 4") {
    auto seq = powers_of_four(200);
    auto rate = rate_of_escape(seq);
    CHECK(rate.R_hat == doctest::Approx(std::log(4.0)).epsilon(1e-10));
    CHECK(rate.curve.size() == 200);
    CHECK(rate.curve.back() == doctest::Approx(std::log(4.0)).epsilon(1e-10));
}

TEST_CASE("alignment statistic of a geodesic orbit nearly attains the rate") {
    auto seq = powers_of_four(400);
    auto rep = alignment_statistic(seq);
    CHECK(rep.R_hat == doctest::Approx(std::log(4.0)).epsilon(1e-10));
    CHECK(rep.L_hat >= 0.95 * rep.R_hat);
    CHECK(rep.L_hat <= rep.R_hat + 1e-9);
    CHECK(rep.admissible_times.size() >= 2);
}

TEST_CASE("euclidean logarithmic spiral: escapes linearly but alignment lags") {
    // x_n = n (cos ln n, sin ln n): |x_n| = n yet the direction keeps turning
    std::vector<ModelPoint> pts;
    pts.push_back(make_point(euclidean(2), {0.0, 0.0}));
    for (int n = 1; n <= 2000; ++n) {
        double th = std::log(double(n));
        pts.push_back(make_point(euclidean(2), {n * std::cos(th), n * std::sin(th)}));
    }
    auto seq = make_sequence(euclidean(2), std::move(pts));
    auto rep = alignment_statistic(seq);
    CHECK(rep.R_hat == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.L_hat < 0.999 * rep.R_hat);
}

TEST_CASE("escort fit recovers the direction and has small residuals") {
    auto seq = powers_of_four(400);
    auto rep = alignment_statistic(seq);
    auto fit = fit_escort(seq, rep);
    CHECK(fit.speed > 0.0);
    // orbit move straight up the imaginary axis: unit direction (0, 1) at i
    CHECK(fit.direction.v[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.direction.v[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.cauchy_gap < 1e-6);
    REQUIRE(!fit.residuals.empty());
    for (auto& [k, r] : fit.residuals) CHECK(r < 1e-8);
}

TEST_CASE("fit_escort throws FitError when nothing is admissible") {
    // early jump then stall near the start: every record of the admissibility
    // score happens before the smallest K threshold
    std::vector<ModelPoint> pts;
    pts.push_back(make_point(euclidean(2), {0.0, 0.0}));
    pts.push_back(make_point(euclidean(2), {10.0, 0.0}));
    for (int n = 2; n <= 50; ++n)
        pts.push_back(make_point(euclidean(2), {0.1 * std::sin(0.7 * n), 0.0}));
    auto seq = make_sequence(euclidean(2), std::move(pts));
    auto rep = alignment_statistic(seq);
    CHECK_THROWS_AS(fit_escort(seq, rep), FitError);
}

TEST_CASE("semicontraction check passes for an orbit of 1-Lipschitz type") {
    auto seq = powers_of_four(100);
    auto rep = semicontraction_check(seq, 200);
    CHECK(rep.pass);
    CHECK(rep.worst_violation <= 1e-9);
}

TEST_CASE("semicontraction check flags an expanding outlier") {
    // distances between consecutive points grow: d(x_n, x_{n+1}) = 2^n,
    // violating d(x_m, x_n) <= d(x_0, x_{n-m}) style nonexpansiveness
    std::vector<ModelPoint> pts;
    double acc = 0.0;
    for (int n = 0; n <= 40; ++n) {
        pts.push_back(make_point(euclidean(2), {acc, 0.0}));
        acc += std::pow(2.0, n);
    }
    auto seq = make_sequence(euclidean(2), std::move(pts));
    auto rep = semicontraction_check(seq, 400);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_violation > 1.0);
}

TEST_CASE("sequence validation rejects inconsistent input") {
    std::vector<ModelPoint> pts = {make_point(euclidean(2), {0.0, 0.0}),
                                   make_point(euclidean(2), {1.0, 0.0})};
    CHECK_THROWS_AS(make_sequence(euclidean(2), pts, {0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(make_sequence(euclidean(2), pts, {0.0}), DomainError);
    std::vector<ModelPoint> mixed = {make_point(euclidean(2), {0.0, 0.0}),
                                     make_point(euclidean(3), {1.0, 0.0, 0.0})};
    CHECK_THROWS_AS(make_sequence(euclidean(2), mixed), DomainError);
}
