#pragma once

#include <vector>

#include "escortlab/boundary.hpp"
#include "escortlab/escort.hpp"
#include "escortlab/geometry.hpp"
#include "escortlab/rotation.hpp"

// Magnetic flow (D/dt alpha' = i alpha') and warped-metric geodesic flow:
// integrators, regime classification, rotation vectors of projected
// trajectories, and the semi-conjugacy construction.

namespace escortlab {

struct FlowState {
    ModelPoint position;
    ModelVector velocity;
    double speed = 0.0;
};
FlowState make_flow_state(const ModelVector& v);

enum class MagneticRegime { Subcritical, Horocyclic, Supercritical };

struct MagneticClass {
    MagneticRegime regime = MagneticRegime::Horocyclic;
    double radius_or_distance = 0.0;  // circle radius (v<1) / distance to geodesic (v>1)
    double escape_rate = 0.0;         // sqrt(v^2-1) for v>1, else 0
};
MagneticClass classify_magnetic(double v);

struct Trajectory {
    ModelId model;
    std::vector<double> times;
    std::vector<ModelPoint> points;
    std::vector<ModelVector> velocities;

    PointSequence as_sequence() const;
};

// Integrates the magnetic equation on a hyperbolic chart from `start` over
// [0, T] (T may be negative) with step dt and per-step speed renormalization.
Trajectory magnetic_trajectory(const FlowState& start, double T, double dt);

// First phase-space return time of a (subcritical) trajectory, refined by
// local quadratic interpolation; NumericError when no return is found.
double detect_period(const FlowState& start, const Trajectory& traj);

struct WarpedRun {
    Trajectory traj;
    double E = 0.0, p1 = 0.0;          // initial conserved quantities
    double E_drift = 0.0, p1_drift = 0.0;
};
WarpedRun warped_geodesic(const FlowState& start, double T, double dt);

enum class WarpedType { I, II, III };  // E > p1^2, E = p1^2, E < p1^2
WarpedType classify_warped(double E, double p1);

// Escort pipeline on a projected trajectory h(f^t x).
RotationEstimate rotation_vector_through_map(const PointSequence& projected);

struct SemiConjugacyData {
    std::vector<double> times;
    std::vector<ModelVector> phi;  // projected geodesic-flow points g^{b} phi_0
    std::vector<double> b;         // raw Busemann cocycle samples
    std::vector<double> a;         // corrected, strictly increasing
    std::vector<double> r;         // a = b + r (monotone-envelope deficit)
    double slope = 0.0;            // a(x,T)/T
};

// traj: the flow trajectory with times already rescaled to unit escape rate;
// v_fwd / v_bwd: forward and backward rotation-vector directions at traj
// start.  VisibilityError when the directions share a boundary endpoint or
// the model has no boundary machinery.
SemiConjugacyData build_semiconjugacy(const PointSequence& traj, const ModelVector& v_fwd,
                                      const ModelVector& v_bwd, double min_slope = 1e-3);

}  // namespace escortlab
