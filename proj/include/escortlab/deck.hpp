#pragma once

#include <array>
#include <vector>

#include "escortlab/geometry.hpp"

// Deck transformations of the supported covers and continuous orbit lifting.
//
// Moebius elements act on any hyperbolic chart by conjugating with the chart's
// identification with the upper half-plane; the stored matrix always refers to
// the half-plane action z -> (az+b)/(cz+d), det = 1.

namespace escortlab {

struct DeckTransformation {
    enum class Kind { Identity, LatticeTranslation, Moebius, XShift };

    Kind kind = Kind::Identity;
    ModelId model;
    std::vector<double> shift;              // lattice translation (integer entries)
    std::array<double, 4> mat{1, 0, 0, 1};  // moebius {a, b, c, d}, det = 1
    double t = 0.0;                         // x-shift amount
};

DeckTransformation deck_identity(const ModelId& model);
DeckTransformation lattice_translation(const ModelId& model, std::vector<double> shift);
DeckTransformation moebius(const ModelId& model, const std::array<double, 4>& mat);
// Hyperbolic element z -> lambda^2 z (axis = imaginary axis, length 2 ln lambda).
DeckTransformation moebius_scaling(const ModelId& model, double lambda);
DeckTransformation x_shift(const ModelId& model, double t);

ModelPoint deck_apply(const DeckTransformation& g, const ModelPoint& p);
ModelVector deck_apply(const DeckTransformation& g, const ModelVector& v);

DeckTransformation deck_compose(const DeckTransformation& g, const DeckTransformation& h);
DeckTransformation deck_inverse(const DeckTransformation& g);
DeckTransformation deck_pow(const DeckTransformation& g, long n);

struct LiftedOrbit {
    std::vector<ModelPoint> points;
    // accumulated generator exponents at each sample (abelianized deck word)
    std::vector<std::vector<long>> words;
};

// Continuous lift of a base orbit by path continuation: at each step the
// candidate images under {id, g_i, g_i^-1} nearest to the previous lifted
// point is chosen; a nearest candidate farther than step_bound raises
// LiftError carrying the offending index.
LiftedOrbit lift_orbit(const ModelId& cover, const std::vector<DeckTransformation>& generators,
                       const std::vector<ModelPoint>& base_orbit, double step_bound);

}  // namespace escortlab
