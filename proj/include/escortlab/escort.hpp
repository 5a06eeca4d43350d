#pragma once

#include <cstddef>
#include <vector>

#include "escortlab/geometry.hpp"

// Epsilon-cones, alignment statistics, rate of escape, and geodesic-escort
// fitting for finite orbits.

namespace escortlab {

struct PointSequence {
    ModelId model;
    std::vector<ModelPoint> points;
    std::vector<double> times;  // strictly increasing; integers for map orbits

    void validate() const;  // throws DomainError on violated invariants
};

PointSequence make_sequence(const ModelId& model, std::vector<ModelPoint> points);
PointSequence make_sequence(const ModelId& model, std::vector<ModelPoint> points,
                            std::vector<double> times);

// z in [x,y]_eps  <=>  e^{-eps} d(x,z) + d(z,y) <= d(x,y)
bool cone_contains(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z, double eps);

struct ConeChordGap {
    double lhs = 0.0;  // d(z,w)^2, w the point on [x,y] at arclength d(x,z)
    double rhs = 0.0;  // 4 (1 - e^{-2 eps}) d(x,z)^2
};
ConeChordGap cone_chord_gap(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z,
                            double eps);

struct EscapeRate {
    double R_hat = 0.0;
    std::vector<double> curve;  // d(x_0, x_n) / t_n for n >= 1
};
EscapeRate rate_of_escape(const PointSequence& seq);

struct AlignmentReport {
    double R_hat = 0.0;
    double L_hat = 0.0;
    std::vector<double> epsilon_grid;
    std::vector<double> K_grid;  // time thresholds
    std::vector<std::size_t> admissible_times;  // indices, for the achieved epsilon
    double achieved_eps = 0.0;   // smallest grid eps with a nonempty admissible set
};

extern const std::vector<double> kDefaultEpsilonGrid;  // {0.5, 0.2, 0.1, 0.05, 0.02}
extern const std::vector<double> kDefaultKGrid;        // {10, 30, 100, 300}

AlignmentReport alignment_statistic(const PointSequence& seq,
                                    const std::vector<double>& K_grid = kDefaultKGrid,
                                    const std::vector<double>& epsilon_grid = kDefaultEpsilonGrid);

struct EscortFit {
    ModelVector direction;  // unit vector at points[0]; zero when speed = 0
    double speed = 0.0;
    std::vector<std::pair<std::size_t, double>> residuals;  // (k, d(x_k, alpha(d_k))/d_k)
    double cauchy_gap = 0.0;
};
EscortFit fit_escort(const PointSequence& seq, const AlignmentReport& report);

struct SemicontractionReport {
    bool pass = true;
    double worst_violation = 0.0;
};
SemicontractionReport semicontraction_check(const PointSequence& seq, std::size_t samples,
                                            std::uint64_t rng_seed = 1);

// f(eps) = 2 sqrt(1 - e^{-2 eps}): chord-gap factor of the escort bound.
double escort_f(double eps);

}  // namespace escortlab
