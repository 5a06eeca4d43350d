#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

// Model geometries: Hadamard charts, their metrics, distances, geodesics.
//
// Hyperbolic charts (disk, half-plane, fermi, polar) are all isometric to
// the hyperbolic plane; internally everything funnels through the upper
// half-plane where closed forms live. The warped-xy metric
// (1+e^-y)^2 dx^2 + dy^2 has no closed-form distance and is handled by a
// Clairaut-type reduction (p1 = W^2 x' is conserved along geodesics).

namespace escortlab {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg, double residual = 0.0)
        : std::runtime_error(msg), residual(residual) {}
    double residual;
};
struct LiftError : std::runtime_error {
    LiftError(const std::string& msg, std::size_t index)
        : std::runtime_error(msg), index(index) {}
    std::size_t index;
};
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VisibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModelKind {
    Euclidean,
    FlatTorusCover,
    PoincareDisk,
    UpperHalfPlane,
    WarpedXY,
    FermiStrip,
    HyperbolicPolar,
};

struct ModelId {
    ModelKind kind = ModelKind::Euclidean;
    int dim = 2;  // used by euclidean / flat-torus-cover; all others are 2

    bool operator==(const ModelId& o) const { return kind == o.kind && dim == o.dim; }
    bool operator!=(const ModelId& o) const { return !(*this == o); }
};

ModelId euclidean(int dim = 2);
ModelId flat_torus_cover(int dim = 2);
ModelId poincare_disk();
ModelId upper_half_plane();
ModelId warped_xy();
ModelId fermi_strip();
ModelId hyperbolic_polar();

std::string model_name(const ModelId& m);
ModelId model_from_name(const std::string& name);

// True for charts of the hyperbolic plane (closed-form geometry available).
bool is_hyperbolic_chart(const ModelId& m);
int model_dim(const ModelId& m);

struct ModelPoint {
    ModelId model;
    std::vector<double> x;

    ModelPoint() = default;
    ModelPoint(ModelId m, std::vector<double> coords) : model(m), x(std::move(coords)) {}
};

ModelPoint make_point(const ModelId& m, std::initializer_list<double> coords);

// Throws DomainError if p lies outside the chart domain.
void check_domain(const ModelPoint& p);
bool in_domain(const ModelPoint& p);

struct ModelVector {
    ModelPoint base;
    std::vector<double> v;

    ModelVector() = default;
    ModelVector(ModelPoint b, std::vector<double> comps) : base(std::move(b)), v(std::move(comps)) {}
};

// Metric tensor contraction at p.
double inner_product(const ModelPoint& p, const std::vector<double>& u,
                     const std::vector<double>& w);
double norm(const ModelVector& v);
ModelVector normalized(const ModelVector& v);
ModelVector scaled(const ModelVector& v, double s);
ModelVector negated(const ModelVector& v);
// Angle between two vectors at the same base point, in [0, pi].
double angle_between(const ModelVector& a, const ModelVector& b);

// Gamma^k_{ij} u^i w^j  (2d charts; zero for euclidean models).
std::array<double, 2> christoffel_contract(const ModelPoint& p, const std::array<double, 2>& u,
                                           const std::array<double, 2>& w);

double distance(const ModelPoint& p, const ModelPoint& q);

// Geodesic through base(v) with initial velocity v, at parameter t.
ModelPoint exp_map(const ModelVector& v, double t);
// Same, also returning the velocity at parameter t.
ModelVector exp_map_with_velocity(const ModelVector& v, double t);

// Inverse of exp_map: exp_map(log_map(p,q), 1) == q.
ModelVector log_map(const ModelPoint& p, const ModelPoint& q);

// Point at arclength s in [0, d(p,q)] on the segment [p,q].
ModelPoint geodesic_point(const ModelPoint& p, const ModelPoint& q, double s);

// D/dt alpha' for a uniformly sampled C^2 curve; returns vectors at the
// interior samples (stencil trims `stencil/2` points at each end).
std::vector<ModelVector> covariant_acceleration(const ModelId& model,
                                                const std::vector<ModelPoint>& curve, double dt,
                                                int stencil = 5);

// 90-degree counterclockwise rotation in the tangent plane (2d charts),
// with the orientation of the disk / half-plane models.
ModelVector rotate90(const ModelVector& v);

// ---- chart conversions (hyperbolic charts <-> upper half-plane) ----
// Exposed for boundary machinery and tests; identity on the half-plane.
ModelPoint to_half_plane(const ModelPoint& p);
ModelPoint from_half_plane(const ModelId& target, const ModelPoint& hp);
ModelVector to_half_plane(const ModelVector& v);
ModelVector from_half_plane(const ModelId& target, const ModelVector& hv);

// Robust half-plane distance (handles y spread over hundreds of orders).
double hp_distance(double x1, double y1, double x2, double y2);

// ---- warped-xy internals (exposed for the flows module / tests) ----
// W(y) = 1 + e^{-y}.
double warped_w(double y);
// Geodesic data from the Clairaut reduction: conserved p1 and initial
// tangent for the unit-speed geodesic from p to q.
struct WarpedGeodesic {
    double p1 = 0.0;      // conserved W^2 x'
    double length = 0.0;  // d(p,q)
    std::array<double, 2> initial_tangent{0.0, 0.0};  // unit-speed components at p
};
WarpedGeodesic warped_solve(const ModelPoint& p, const ModelPoint& q);

}  // namespace escortlab
