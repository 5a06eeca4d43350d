#pragma once

#include <optional>
#include <utility>

#include "escortlab/escort.hpp"
#include "escortlab/geometry.hpp"

// Boundary at infinity of the hyperbolic charts: endpoints of geodesic rays,
// Busemann functions (closed form on hyperbolic charts, finite-horizon limit
// elsewhere), horosphere projection, and boundary limits of escaping orbits.

namespace escortlab {

struct BoundaryPoint {
    ModelId model;
    bool at_infinity = false;  // half-plane only: the distinguished point
    double value = 0.0;        // disk: angle in [0, 2pi); half-plane: real x

    // canonical representation used for comparisons, independent of chart
    double disk_angle() const;
};

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol = 1e-9);

// Endpoint of the ray exp(t v), t -> +inf.  Hyperbolic charts only.
BoundaryPoint boundary_endpoint(const ModelVector& v);

struct AsymptoticVerdict {
    bool asymptotic = false;
    double sup_distance = 0.0;  // observed over the sampled horizon
    bool exact = false;         // true when decided via boundary endpoints
};
AsymptoticVerdict asymptotic_test(const ModelVector& v, const ModelVector& w, double T = 50.0);

// B_v(x, y) = lim_t d(x, exp(tv)) - d(exp(tv), y).  Closed form when the
// model is a hyperbolic chart; otherwise evaluated at t and 2t with an
// agreement check (NumericError on disagreement).
double busemann(const ModelVector& v, const ModelPoint& x, const ModelPoint& y,
                double horizon = 64.0, double tol = 1e-5);

// Busemann function of a boundary point directly (hyperbolic charts).
double busemann_at(const BoundaryPoint& xi, const ModelPoint& x, const ModelPoint& y);

// Unit vector on the geodesic from endpoint(v_minus) to endpoint(v_plus),
// oriented toward endpoint(v_plus), based where B_{v_plus}(base(v_plus), .) = 0.
ModelVector horosphere_project(const ModelVector& v_plus, const ModelVector& v_minus);

struct OrbitLimits {
    BoundaryPoint x_plus;
    BoundaryPoint x_minus;
    double separation = 0.0;  // angular distance on the disk
};
// Boundary limits of forward/backward half-orbits given in the disk model.
OrbitLimits orbit_boundary_limits(const PointSequence& fwd, const PointSequence& bwd);

}  // namespace escortlab
