#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "escortlab/escort.hpp"
#include "escortlab/geometry.hpp"

// Birkhoff / subadditive averaging over deterministic seed ensembles and the
// empirical alignment check.

namespace escortlab {

using State = std::vector<double>;

struct OrbitGenerator {
    // step(seed_index, state, k) -> next state; deterministic per seed
    std::function<State(std::size_t, const State&, std::size_t)> step;
    std::function<ModelPoint(const State&)> embed;
    std::vector<State> seeds;
    std::uint64_t rng_seed = 0;  // recorded provenance of the seed sampling
};

// Embedded orbit of one seed: x_0 .. x_n.
PointSequence generate_orbit(const OrbitGenerator& gen, std::size_t seed_index, std::size_t n);

// Partial means (1/m) sum_{k<m} observable(state_k), m = 1..n, per seed.
std::vector<std::vector<double>> birkhoff_average(const OrbitGenerator& gen,
                                                  const std::function<double(const State&)>& obs,
                                                  std::size_t n);

struct KingmanEstimate {
    std::vector<double> per_seed_R;      // tail-slope of n -> d(x_0, x_n)
    double ensemble_mean = 0.0;
    std::vector<double> cesaro_curve;    // (1/n) mean over seeds of d(x_0, x_n)
    double stationarity_violation = 0.0;  // advisory spot-check
};
KingmanEstimate kingman_rate(const OrbitGenerator& gen, std::size_t n);

struct SeedAlignment {
    double R_hat = 0.0;
    double L_hat = 0.0;
    bool escaping = false;  // R_hat above the linear-escape threshold
    bool aligned = false;   // L_hat >= (1 - delta) R_hat
};
struct AlignmentEnsembleReport {
    double fraction = 1.0;  // aligned / escaping (1 when no seed escapes)
    std::vector<SeedAlignment> per_seed;
};
AlignmentEnsembleReport alignment_ensemble_check(const OrbitGenerator& gen, std::size_t n,
                                                 double delta);

}  // namespace escortlab
