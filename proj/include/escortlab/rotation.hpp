#pragma once

#include <functional>
#include <vector>

#include "escortlab/deck.hpp"
#include "escortlab/escort.hpp"
#include "escortlab/geometry.hpp"

// Rotation-vector estimation for covered systems, translation lengths and
// periodic-orbit norms, Busemann increments, and past/future comparison.

namespace escortlab {

struct CoveredSystem {
    ModelId model;  // the cover
    std::vector<DeckTransformation> generators;
    std::function<ModelPoint(const ModelPoint&)> lift_map;
    std::function<ModelPoint(const ModelPoint&)> lift_map_inverse;  // optional
};

// max over random samples of d(F(g p), g(F p)) for every generator g
double commutation_defect(const CoveredSystem& sys, std::size_t samples = 32,
                          std::uint64_t rng_seed = 5);

struct RotationEstimate {
    ModelPoint base;
    ModelVector vector;
    double norm = 0.0;
    double direction_gap = 0.0;  // cauchy_gap from the escort fit
    double horizon = 0.0;
    bool direction_defined = true;
};

RotationEstimate rotation_vector_map(const CoveredSystem& sys, const ModelPoint& x,
                                     std::size_t n);

// Same pipeline on a pre-sampled lifted trajectory (real time stamps); also
// checks agreement between full sampling and integer-time subsampling.
RotationEstimate rotation_vector_flow(const PointSequence& lifted_trajectory);

struct TranslationLengthResult {
    double length = 0.0;
    ModelPoint argmin;  // best point found (for infimum-at-infinity cases,
                        // the box-edge minimizer)
};
TranslationLengthResult translation_length(const DeckTransformation& rho,
                                           double search_radius = 20.0);

struct PeriodicOrbitSpec {
    ModelPoint point;
    unsigned period = 1;
    DeckTransformation rho;  // deck_apply(rho, x) = F^p(x)
};
double periodic_norm(const PeriodicOrbitSpec& spec);

// B_v(x, F x) for the system's lift map.
double busemann_increment(const CoveredSystem& sys, const ModelPoint& x, const ModelVector& v);

struct PastFutureReport {
    RotationEstimate fwd;
    RotationEstimate bwd;
    double angle_fwd_vs_neg_bwd = 0.0;  // 0 when the estimates are opposite
};
PastFutureReport past_future_compare(const CoveredSystem& sys, const ModelPoint& x,
                                     std::size_t n);

}  // namespace escortlab
