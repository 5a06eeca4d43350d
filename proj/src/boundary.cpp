#include "escortlab/boundary.hpp"

#include <cmath>
#include <complex>

namespace escortlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

double angular_distance(double a, double b) {
    double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

// Half-plane endpoint of the ray from (x,y) with euclidean direction (a,b).
std::pair<bool, double> hp_endpoint(double x, double y, double a, double b) {
    if (std::abs(a) <= 1e-14 * std::abs(b)) {
        if (b > 0.0) return {true, 0.0};
        return {false, x};
    }
    double c = x + y * b / a;
    double R = std::hypot(x - c, y);
    double th0 = std::atan2(y, x - c);
    double s = (-a * std::sin(th0) + b * std::cos(th0)) >= 0.0 ? 1.0 : -1.0;
    return {false, s > 0.0 ? c - R : c + R};
}

// boundary value in half-plane convention -> disk angle via the Cayley map
double hp_boundary_to_disk_angle(bool at_inf, double x) {
    if (at_inf) return 0.0;  // (z - i)/(z + i) -> 1
    std::complex<double> w = (std::complex<double>(x, 0) - std::complex<double>(0, 1)) /
                             (std::complex<double>(x, 0) + std::complex<double>(0, 1));
    return wrap_angle(std::atan2(w.imag(), w.real()));
}

// disk angle -> half-plane boundary value
std::pair<bool, double> disk_angle_to_hp(double angle) {
    std::complex<double> w = std::polar(1.0, angle);
    std::complex<double> den = 1.0 - w;
    if (std::abs(den) < 1e-12) return {true, 0.0};
    std::complex<double> z = std::complex<double>(0, 1) * (1.0 + w) / den;
    return {false, z.real()};
}

std::pair<bool, double> to_hp_boundary(const BoundaryPoint& bp) {
    if (bp.model.kind == ModelKind::PoincareDisk) return disk_angle_to_hp(bp.value);
    return {bp.at_infinity, bp.value};
}

// Only the direction of a ray matters; accept any nonzero vector.
ModelVector require_unit(const ModelVector& v, const char* who) {
    double n = norm(v);
    if (!(n > 0.0)) throw DomainError(std::string(who) + ": nonzero vector required");
    if (std::abs(n - 1.0) <= 1e-12) return v;
    return normalized(v);
}

}  // namespace

double BoundaryPoint::disk_angle() const {
    if (model.kind == ModelKind::PoincareDisk) return wrap_angle(value);
    return hp_boundary_to_disk_angle(at_infinity, value);
}

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
    return angular_distance(a.disk_angle(), b.disk_angle()) <= tol;
}

BoundaryPoint boundary_endpoint(const ModelVector& v) {
    if (!is_hyperbolic_chart(v.base.model))
        throw DomainError("boundary_endpoint: hyperbolic charts only");
    ModelVector h = to_half_plane(v);
    auto [at_inf, x] = hp_endpoint(h.base.x[0], h.base.x[1], h.v[0], h.v[1]);
    BoundaryPoint bp;
    switch (v.base.model.kind) {
        case ModelKind::PoincareDisk:
            bp.model = poincare_disk();
            bp.value = hp_boundary_to_disk_angle(at_inf, x);
            break;
        case ModelKind::UpperHalfPlane:
        default:
            // fermi / polar endpoints are reported in half-plane convention
            bp.model = upper_half_plane();
            bp.at_infinity = at_inf;
            bp.value = at_inf ? 0.0 : x;
            break;
    }
    return bp;
}

AsymptoticVerdict asymptotic_test(const ModelVector& v, const ModelVector& w, double T) {
    if (v.base.model != w.base.model) throw DomainError("asymptotic_test: model mismatch");
    ModelVector vu = require_unit(v, "asymptotic_test");
    ModelVector wu = require_unit(w, "asymptotic_test");
    AsymptoticVerdict out;
    const int samples = 33;
    std::vector<double> dists;
    double horizon = is_hyperbolic_chart(v.base.model) ? std::min(T, 30.0) : T;
    for (int i = 0; i < samples; ++i) {
        double t = horizon * i / (samples - 1);
        dists.push_back(distance(exp_map(vu, t), exp_map(wu, t)));
        out.sup_distance = std::max(out.sup_distance, dists.back());
    }
    if (is_hyperbolic_chart(v.base.model)) {
        out.exact = true;
        out.asymptotic = same_boundary_point(boundary_endpoint(vu), boundary_endpoint(wu));
        return out;
    }
    std::size_t arg_max = 0;
    for (std::size_t i = 1; i < dists.size(); ++i)
        if (dists[i] > dists[arg_max]) arg_max = i;
    bool decreasing_after = true;
    for (std::size_t i = arg_max + 1; i < dists.size(); ++i)
        if (dists[i] > dists[i - 1] + 1e-9) decreasing_after = false;
    out.asymptotic = decreasing_after && dists.back() <= dists[dists.size() / 2] + 1e-6;
    return out;
}

double busemann_at(const BoundaryPoint& xi, const ModelPoint& x, const ModelPoint& y) {
    if (!is_hyperbolic_chart(x.model)) throw DomainError("busemann_at: hyperbolic charts only");
    ModelPoint hx = to_half_plane(x), hy = to_half_plane(y);
    auto [at_inf, e] = to_hp_boundary(xi);
    if (at_inf) return std::log(hy.x[1]) - std::log(hx.x[1]);
    double lx = std::log(std::hypot(hx.x[0] - e, hx.x[1]));
    double ly = std::log(std::hypot(hy.x[0] - e, hy.x[1]));
    return (std::log(hy.x[1]) - 2.0 * ly) - (std::log(hx.x[1]) - 2.0 * lx);
}

double busemann(const ModelVector& v, const ModelPoint& x, const ModelPoint& y, double horizon,
                double tol) {
    if (v.base.model != x.model || x.model != y.model)
        throw DomainError("busemann: model mismatch");
    ModelVector vu = require_unit(v, "busemann");
    if (is_hyperbolic_chart(x.model)) return busemann_at(boundary_endpoint(vu), x, y);
    auto eval = [&](double t) {
        ModelPoint gt = exp_map(vu, t);
        return distance(x, gt) - distance(gt, y);
    };
    double b1 = eval(horizon), b2 = eval(2.0 * horizon);
    if (std::abs(b1 - b2) > tol)
        throw NumericError("busemann: finite-horizon values disagree", std::abs(b1 - b2));
    return b2;
}

ModelVector horosphere_project(const ModelVector& v_plus, const ModelVector& v_minus) {
    if (v_plus.base.model != v_minus.base.model)
        throw DomainError("horosphere_project: model mismatch");
    if (!is_hyperbolic_chart(v_plus.base.model))
        throw VisibilityError("horosphere_project: no boundary machinery for this model");
    ModelVector vpu = require_unit(v_plus, "horosphere_project");
    ModelVector vmu = require_unit(v_minus, "horosphere_project");
    BoundaryPoint xi_plus = boundary_endpoint(vpu);
    BoundaryPoint xi_minus = boundary_endpoint(vmu);
    if (same_boundary_point(xi_plus, xi_minus))
        throw VisibilityError("horosphere_project: endpoints coincide; no connecting geodesic");

    auto [pinf, pe] = to_hp_boundary(xi_plus);
    auto [minf, me] = to_hp_boundary(xi_minus);
    ModelVector ref;  // unit tangent toward xi_plus at a reference point q0
    if (pinf) {
        ref = ModelVector(ModelPoint(upper_half_plane(), {me, 1.0}), {0.0, 1.0});
    } else if (minf) {
        ref = ModelVector(ModelPoint(upper_half_plane(), {pe, 1.0}), {0.0, -1.0});
    } else {
        double c = 0.5 * (pe + me), R = 0.5 * std::abs(pe - me);
        double s = pe > me ? 1.0 : -1.0;
        ref = ModelVector(ModelPoint(upper_half_plane(), {c, R}), {s * R, 0.0});
    }
    ModelPoint p = to_half_plane(v_plus.base);
    double tstar = -busemann_at(xi_plus, p, ref.base);
    ModelVector out_hp = exp_map_with_velocity(ref, tstar);
    return from_half_plane(v_plus.base.model, out_hp);
}

OrbitLimits orbit_boundary_limits(const PointSequence& fwd, const PointSequence& bwd) {
    if (fwd.model.kind != ModelKind::PoincareDisk || bwd.model.kind != ModelKind::PoincareDisk)
        throw DomainError("orbit_boundary_limits: disk model required");
    auto limit_of = [](const PointSequence& seq) {
        seq.validate();
        const auto& last = seq.points.back();
        double r = std::hypot(last.x[0], last.x[1]);
        if (r < 0.9)
            throw NumericError("orbit_boundary_limits: orbit not approaching the boundary",
                               1.0 - r);
        BoundaryPoint bp;
        bp.model = poincare_disk();
        bp.value = wrap_angle(std::atan2(last.x[1], last.x[0]));
        return bp;
    };
    OrbitLimits out;
    out.x_plus = limit_of(fwd);
    out.x_minus = limit_of(bwd);
    out.separation = angular_distance(out.x_plus.value, out.x_minus.value);
    return out;
}

}  // namespace escortlab
