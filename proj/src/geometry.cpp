#include "escortlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

namespace escortlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

using cplx = std::complex<double>;

double sqr(double v) { return v * v; }

// acosh(1+u) evaluated stably for u from denormal to ~1e300.
double dist_from_u(double u) {
    if (u <= 0.0) return 0.0;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double coshm1(double t) { return 2.0 * sqr(std::sinh(0.5 * t)); }

}  // namespace

// ---------------------------------------------------------------- models

ModelId euclidean(int dim) { return ModelId{ModelKind::Euclidean, dim}; }
ModelId flat_torus_cover(int dim) { return ModelId{ModelKind::FlatTorusCover, dim}; }
ModelId poincare_disk() { return ModelId{ModelKind::PoincareDisk, 2}; }
ModelId upper_half_plane() { return ModelId{ModelKind::UpperHalfPlane, 2}; }
ModelId warped_xy() { return ModelId{ModelKind::WarpedXY, 2}; }
ModelId fermi_strip() { return ModelId{ModelKind::FermiStrip, 2}; }
ModelId hyperbolic_polar() { return ModelId{ModelKind::HyperbolicPolar, 2}; }

std::string model_name(const ModelId& m) {
    switch (m.kind) {
        case ModelKind::Euclidean: return "euclidean(" + std::to_string(m.dim) + ")";
        case ModelKind::FlatTorusCover: return "flat-torus-cover(" + std::to_string(m.dim) + ")";
        case ModelKind::PoincareDisk: return "poincare-disk";
        case ModelKind::UpperHalfPlane: return "upper-half-plane";
        case ModelKind::WarpedXY: return "warped-xy";
        case ModelKind::FermiStrip: return "fermi-strip";
        case ModelKind::HyperbolicPolar: return "hyperbolic-polar";
    }
    return "?";
}

ModelId model_from_name(const std::string& name) {
    auto dim_of = [&](const std::string&) {
        auto open = name.find('(');
        if (open == std::string::npos) return 2;
        return std::stoi(name.substr(open + 1));
    };
    if (name.rfind("euclidean", 0) == 0) return euclidean(dim_of(name));
    if (name.rfind("flat-torus-cover", 0) == 0) return flat_torus_cover(dim_of(name));
    if (name == "poincare-disk") return poincare_disk();
    if (name == "upper-half-plane") return upper_half_plane();
    if (name == "warped-xy") return warped_xy();
    if (name == "fermi-strip") return fermi_strip();
    if (name == "hyperbolic-polar") return hyperbolic_polar();
    throw ConfigError("unknown model name: " + name);
}

bool is_hyperbolic_chart(const ModelId& m) {
    return m.kind == ModelKind::PoincareDisk || m.kind == ModelKind::UpperHalfPlane ||
           m.kind == ModelKind::FermiStrip || m.kind == ModelKind::HyperbolicPolar;
}

int model_dim(const ModelId& m) {
    if (m.kind == ModelKind::Euclidean || m.kind == ModelKind::FlatTorusCover) return m.dim;
    return 2;
}

ModelPoint make_point(const ModelId& m, std::initializer_list<double> coords) {
    return ModelPoint(m, std::vector<double>(coords));
}

bool in_domain(const ModelPoint& p) {
    if ((int)p.x.size() != model_dim(p.model)) return false;
    for (double c : p.x)
        if (!std::isfinite(c)) return false;
    switch (p.model.kind) {
        case ModelKind::PoincareDisk: return sqr(p.x[0]) + sqr(p.x[1]) < 1.0;
        case ModelKind::UpperHalfPlane: return p.x[1] > 0.0;
        case ModelKind::HyperbolicPolar: return p.x[0] > 0.0;
        default: return true;
    }
}

void check_domain(const ModelPoint& p) {
    if (!in_domain(p))
        throw DomainError("point outside domain of model " + model_name(p.model));
}

// ---------------------------------------------------------------- metric

double inner_product(const ModelPoint& p, const std::vector<double>& u,
                     const std::vector<double>& w) {
    switch (p.model.kind) {
        case ModelKind::Euclidean:
        case ModelKind::FlatTorusCover: {
            double s = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * w[i];
            return s;
        }
        case ModelKind::PoincareDisk: {
            double lam = 2.0 / (1.0 - sqr(p.x[0]) - sqr(p.x[1]));
            return lam * lam * (u[0] * w[0] + u[1] * w[1]);
        }
        case ModelKind::UpperHalfPlane:
            return (u[0] * w[0] + u[1] * w[1]) / sqr(p.x[1]);
        case ModelKind::WarpedXY:
            return sqr(warped_w(p.x[1])) * u[0] * w[0] + u[1] * w[1];
        case ModelKind::FermiStrip:
            return sqr(std::cosh(p.x[1])) * u[0] * w[0] + u[1] * w[1];
        case ModelKind::HyperbolicPolar:
            return u[0] * w[0] + sqr(std::sinh(p.x[0])) * u[1] * w[1];
    }
    return 0.0;
}

double norm(const ModelVector& v) { return std::sqrt(std::max(0.0, inner_product(v.base, v.v, v.v))); }

ModelVector normalized(const ModelVector& v) {
    double n = norm(v);
    if (n == 0.0) return v;
    return scaled(v, 1.0 / n);
}

ModelVector scaled(const ModelVector& v, double s) {
    ModelVector out = v;
    for (double& c : out.v) c *= s;
    return out;
}

ModelVector negated(const ModelVector& v) { return scaled(v, -1.0); }

double angle_between(const ModelVector& a, const ModelVector& b) {
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    double c = inner_product(a.base, a.v, b.v) / (na * nb);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

std::array<double, 2> christoffel_contract(const ModelPoint& p, const std::array<double, 2>& u,
                                           const std::array<double, 2>& w) {
    const double a = u[0], b = u[1], c = w[0], d = w[1];
    switch (p.model.kind) {
        case ModelKind::Euclidean:
        case ModelKind::FlatTorusCover:
            return {0.0, 0.0};
        case ModelKind::UpperHalfPlane: {
            double y = p.x[1];
            // G^x_{xy} = -1/y, G^y_{xx} = 1/y, G^y_{yy} = -1/y
            return {-(a * d + b * c) / y, (a * c - b * d) / y};
        }
        case ModelKind::PoincareDisk: {
            double s = 1.0 - sqr(p.x[0]) - sqr(p.x[1]);
            double fx = 2.0 * p.x[0] / s, fy = 2.0 * p.x[1] / s;
            // conformal metric e^{2phi}: G^1 = fx(ac - bd) + fy(ad + bc), etc.
            return {fx * (a * c - b * d) + fy * (a * d + b * c),
                    fy * (b * d - a * c) + fx * (a * d + b * c)};
        }
        case ModelKind::WarpedXY: {
            double W = warped_w(p.x[1]);
            double Wp = -std::exp(-p.x[1]);
            return {(Wp / W) * (a * d + b * c), -W * Wp * a * c};
        }
        case ModelKind::FermiStrip: {
            double r = p.x[1];
            double th = std::tanh(r);
            return {th * (a * d + b * c), -std::cosh(r) * std::sinh(r) * a * c};
        }
        case ModelKind::HyperbolicPolar: {
            double r = p.x[0];
            double ct = 1.0 / std::tanh(r);
            // coords (r, theta): G^theta_{r theta} = coth r, G^r_{theta theta} = -sinh r cosh r
            return {-std::sinh(r) * std::cosh(r) * b * d, ct * (a * d + b * c)};
        }
    }
    return {0.0, 0.0};
}

ModelVector rotate90(const ModelVector& v) {
    const double a = v.v[0], b = v.v[1];
    ModelVector out = v;
    switch (v.base.model.kind) {
        case ModelKind::Euclidean:
        case ModelKind::FlatTorusCover:
        case ModelKind::PoincareDisk:
        case ModelKind::UpperHalfPlane:
            out.v = {-b, a};
            break;
        case ModelKind::FermiStrip: {
            // the (x,r) chart is negatively oriented relative to the half-plane
            double ch = std::cosh(v.base.x[1]);
            out.v = {b / ch, -a * ch};
            break;
        }
        case ModelKind::HyperbolicPolar: {
            double sh = std::sinh(v.base.x[0]);
            out.v = {-b * sh, a / sh};
            break;
        }
        case ModelKind::WarpedXY: {
            double W = warped_w(v.base.x[1]);
            out.v = {-b / W, a * W};
            break;
        }
    }
    return out;
}

// ------------------------------------------------- half-plane primitives

double hp_distance(double x1, double y1, double x2, double y2) {
    double num = std::hypot(x2 - x1, y2 - y1);
    if (num == 0.0) return 0.0;
    double r1 = num / y1, r2 = num / y2;
    if (r1 < 1e150 && r2 < 1e150 && r1 > 1e-150 && r2 > 1e-150)
        return dist_from_u(0.5 * r1 * r2);
    double lu = std::log(num) - std::log(y1) + std::log(num) - std::log(y2) - std::log(2.0);
    if (lu > 37.0) return lu + std::log(2.0);
    if (lu < -37.0) return std::sqrt(2.0 * std::exp(lu));
    return dist_from_u(std::exp(lu));
}

namespace {

struct HpState {
    double x, y;    // position
    double vx, vy;  // velocity components
};

// Unit-speed geodesic of the upper half-plane from (x0,y0) with Euclidean
// direction (ux,uy) (hypot(ux,uy) == y0), evaluated at arclength t.
HpState hp_unit_geodesic(double x0, double y0, double ux, double uy, double t) {
    if (std::abs(ux) <= 1e-14 * std::abs(uy)) {
        double sgn = uy >= 0.0 ? 1.0 : -1.0;
        double y = y0 * std::exp(sgn * t);
        return {x0, y, 0.0, sgn * y};
    }
    double c = x0 + y0 * uy / ux;
    double R = std::hypot(x0 - c, y0);
    double th0 = std::atan2(y0, x0 - c);
    double s = (-ux * std::sin(th0) + uy * std::cos(th0)) >= 0.0 ? 1.0 : -1.0;
    double lw = std::log(std::tan(0.5 * th0)) + s * t;
    // sin/cos from w = tan(theta/2), stable across the whole range
    double sinth, costh;
    if (lw > 300.0) {
        double iw = std::exp(-lw);
        sinth = 2.0 * iw;
        costh = -1.0 + 2.0 * iw * iw;
    } else if (lw < -300.0) {
        double w = std::exp(lw);
        sinth = 2.0 * w;
        costh = 1.0 - 2.0 * w * w;
    } else {
        double w = std::exp(lw);
        double iw = 1.0 / w;
        sinth = 2.0 / (w + iw);
        costh = (iw - w) / (iw + w);
    }
    double y = R * sinth;
    return {c + R * costh, y, -s * y * sinth, s * y * costh};
}

ModelVector hp_log(const ModelPoint& p, const ModelPoint& q) {
    double xp = p.x[0], yp = p.x[1], xq = q.x[0], yq = q.x[1];
    double scale = std::abs(xp) + std::abs(xq) + yp + yq;
    if (std::abs(xq - xp) <= 1e-15 * scale) {
        return ModelVector(p, {0.0, yp * std::log(yq / yp)});
    }
    double c = (sqr(xq) + sqr(yq) - sqr(xp) - sqr(yp)) / (2.0 * (xq - xp));
    double xtp = xp - c, xtq = xq - c;
    double rp = std::hypot(xtp, yp), rq = std::hypot(xtq, yq);
    // log tan(theta/2) via the half-angle identity on the numerically safe
    // side; the angles themselves round to 0 or pi for boundary-hugging points
    auto log_tan_half = [](double xt, double y, double r) {
        return xt <= 0.0 ? std::log((r - xt) / y) : std::log(y / (r + xt));
    };
    double tt = log_tan_half(xtq, yq, rq) - log_tan_half(xtp, yp, rp);
    double d = std::abs(tt);
    double s = tt >= 0.0 ? 1.0 : -1.0;
    double sinp = yp / rp, cosp = xtp / rp;
    return ModelVector(p, {-d * s * yp * sinp, d * s * yp * cosp});
}

// ------------------------------------------------- chart conversions

cplx as_complex(const ModelPoint& p) { return {p.x[0], p.x[1]}; }

ModelPoint hp_from_disk(const ModelPoint& p) {
    cplx w = as_complex(p);
    cplx z = cplx(0, 1) * (1.0 + w) / (1.0 - w);
    return ModelPoint(upper_half_plane(), {z.real(), z.imag()});
}

ModelPoint disk_from_hp(const ModelPoint& p) {
    cplx z = as_complex(p);
    cplx w = (z - cplx(0, 1)) / (z + cplx(0, 1));
    return ModelPoint(poincare_disk(), {w.real(), w.imag()});
}

ModelPoint hp_from_fermi(const ModelPoint& p) {
    double ex = std::exp(p.x[0]);
    double th = std::tanh(p.x[1]);
    double sech = 1.0 / std::cosh(p.x[1]);
    if (!std::isfinite(ex)) throw NumericError("fermi chart coordinate overflow");
    return ModelPoint(upper_half_plane(), {ex * th, ex * sech});
}

ModelPoint fermi_from_hp(const ModelPoint& p) {
    double rho = std::hypot(p.x[0], p.x[1]);
    // sinh(r) = x/y exactly in this chart; asinh stays finite where
    // atanh(x/rho) would round to +-1 near the boundary
    return ModelPoint(fermi_strip(), {std::log(rho), std::asinh(p.x[0] / p.x[1])});
}

ModelPoint disk_from_polar(const ModelPoint& p) {
    double re = std::tanh(0.5 * p.x[0]);
    return ModelPoint(poincare_disk(), {re * std::cos(p.x[1]), re * std::sin(p.x[1])});
}

ModelPoint polar_from_disk(const ModelPoint& p) {
    double re = std::hypot(p.x[0], p.x[1]);
    return ModelPoint(hyperbolic_polar(), {2.0 * std::atanh(re), std::atan2(p.x[1], p.x[0])});
}

// 2x2 Jacobian of the chart-to-half-plane map at p (columns: d/dcoord).
std::array<double, 4> jac_to_hp(const ModelPoint& p) {
    switch (p.model.kind) {
        case ModelKind::UpperHalfPlane: return {1, 0, 0, 1};
        case ModelKind::PoincareDisk: {
            cplx w = as_complex(p);
            cplx dz = cplx(0, 2) / ((1.0 - w) * (1.0 - w));
            return {dz.real(), -dz.imag(), dz.imag(), dz.real()};
        }
        case ModelKind::FermiStrip: {
            double ex = std::exp(p.x[0]);
            double r = p.x[1];
            double th = std::tanh(r), sech = 1.0 / std::cosh(r);
            return {ex * th, ex * sech * sech, ex * sech, -ex * sech * th};
        }
        case ModelKind::HyperbolicPolar: {
            // polar -> disk -> hp, chain the two Jacobians
            double r = p.x[0], t = p.x[1];
            double re = std::tanh(0.5 * r);
            double dre = 0.5 * (1.0 - re * re);
            double ct = std::cos(t), st = std::sin(t);
            std::array<double, 4> jd = {dre * ct, -re * st, dre * st, re * ct};
            ModelPoint dp = disk_from_polar(p);
            cplx w = as_complex(dp);
            cplx dz = cplx(0, 2) / ((1.0 - w) * (1.0 - w));
            std::array<double, 4> jh = {dz.real(), -dz.imag(), dz.imag(), dz.real()};
            return {jh[0] * jd[0] + jh[1] * jd[2], jh[0] * jd[1] + jh[1] * jd[3],
                    jh[2] * jd[0] + jh[3] * jd[2], jh[2] * jd[1] + jh[3] * jd[3]};
        }
        default: throw DomainError("not a hyperbolic chart: " + model_name(p.model));
    }
}

std::vector<double> apply_jac(const std::array<double, 4>& j, const std::vector<double>& v) {
    return {j[0] * v[0] + j[1] * v[1], j[2] * v[0] + j[3] * v[1]};
}

std::vector<double> solve_jac(const std::array<double, 4>& j, const std::vector<double>& v) {
    double det = j[0] * j[3] - j[1] * j[2];
    return {(j[3] * v[0] - j[1] * v[1]) / det, (-j[2] * v[0] + j[0] * v[1]) / det};
}

}  // namespace

ModelPoint to_half_plane(const ModelPoint& p) {
    switch (p.model.kind) {
        case ModelKind::UpperHalfPlane: return p;
        case ModelKind::PoincareDisk: return hp_from_disk(p);
        case ModelKind::FermiStrip: return hp_from_fermi(p);
        case ModelKind::HyperbolicPolar: return hp_from_disk(disk_from_polar(p));
        default: throw DomainError("not a hyperbolic chart: " + model_name(p.model));
    }
}

ModelPoint from_half_plane(const ModelId& target, const ModelPoint& hp) {
    switch (target.kind) {
        case ModelKind::UpperHalfPlane: return hp;
        case ModelKind::PoincareDisk: return disk_from_hp(hp);
        case ModelKind::FermiStrip: return fermi_from_hp(hp);
        case ModelKind::HyperbolicPolar: return polar_from_disk(disk_from_hp(hp));
        default: throw DomainError("not a hyperbolic chart: " + model_name(target));
    }
}

ModelVector to_half_plane(const ModelVector& v) {
    if (v.base.model.kind == ModelKind::UpperHalfPlane) return v;
    return ModelVector(to_half_plane(v.base), apply_jac(jac_to_hp(v.base), v.v));
}

ModelVector from_half_plane(const ModelId& target, const ModelVector& hv) {
    if (target.kind == ModelKind::UpperHalfPlane) return hv;
    ModelPoint p = from_half_plane(target, hv.base);
    return ModelVector(p, solve_jac(jac_to_hp(p), hv.v));
}

// ------------------------------------------------- warped-xy geometry

double warped_w(double y) { return 1.0 + std::exp(-y); }

namespace {

// 64-point Gauss-Legendre nodes/weights on [-1,1], computed once.
struct GaussLegendre {
    std::array<double, 64> node{}, weight{};
    GaussLegendre() {
        const int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            node[i] = -x;
            node[n - 1 - i] = x;
            weight[i] = weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre& gl64() {
    static GaussLegendre g;
    return g;
}

// -expm1(-u2)/u2, stable at u2 = 0.
double em_ratio(double u2) {
    if (u2 < 1e-12) return 1.0 - 0.5 * u2;
    return -std::expm1(-u2) / u2;
}

struct LegIntegral {
    double dx = 0.0, len = 0.0;
};

// Integrals of dx and arclength along a warped geodesic leg with turning
// height ystar = ybase + delta, in the substituted variable u
// (y = ystar - u^2), over u in [u0, u1].  The Clairaut constant is
// p1 = W(ystar); parametrizing by (ybase, delta) keeps the computation
// exact even when delta is far below the resolution of ybase + delta.
LegIntegral warped_leg_sub(double ybase, double delta, double u0, double u1) {
    LegIntegral out;
    if (u1 <= u0) return out;
    const auto& g = gl64();
    const double Wstar = 1.0 + std::exp(-ybase) * std::exp(-delta);
    const int panels = 1 + (int)(2.0 * (u1 - u0));
    for (int pnl = 0; pnl < panels; ++pnl) {
        double a = u0 + (u1 - u0) * pnl / panels;
        double b = u0 + (u1 - u0) * (pnl + 1) / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < 64; ++i) {
            double u = mid + half * g.node[i];
            double u2 = u * u;
            double y = (ybase - u2) + delta;
            double W = warped_w(y);
            // G * W^2 / u^2 with G = (W^2 - Wstar^2)/W^2; the difference
            // e^{-y} - e^{-ystar} is -e^{-y} expm1(-u^2)
            double h = std::exp(-y) * em_ratio(u2) * (W + Wstar);
            double common = 2.0 / std::sqrt(h);
            double wgt = g.weight[i] * half;
            out.len += wgt * W * common;
            out.dx += wgt * (Wstar / W) * common;
        }
    }
    return out;
}

// Plain-y integration for p1 <= 1 (no turning point at any height).
LegIntegral warped_plain(double p1, double ylo, double yhi) {
    LegIntegral out;
    if (yhi <= ylo) return out;
    const auto& g = gl64();
    const double onemp = 1.0 - p1;
    const int panels = 1 + (int)(yhi - ylo);
    for (int pnl = 0; pnl < panels; ++pnl) {
        double a = ylo + (yhi - ylo) * pnl / panels;
        double b = ylo + (yhi - ylo) * (pnl + 1) / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < 64; ++i) {
            double y = mid + half * g.node[i];
            double W = warped_w(y);
            double G = (onemp + std::exp(-y)) * (W + p1) / (W * W);
            double inv = 1.0 / std::sqrt(G);
            double wgt = g.weight[i] * half;
            out.len += wgt * inv;
            out.dx += wgt * (p1 / (W * W)) * inv;
        }
    }
    return out;
}

double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
             double xtol);

// Expanding-bracket Brent in a log-parametrized variable.
double brent_log(const std::function<double(double)>& f, double t0, bool increasing) {
    double step = 1.0;
    double a = t0, fa = f(t0);
    if (fa == 0.0) return t0;
    double dir = (fa < 0.0) == increasing ? 1.0 : -1.0;
    double b = a, fb = fa;
    for (int it = 0; it < 200; ++it) {
        a = b;
        fa = fb;
        b = a + dir * step;
        step *= 2.0;
        if (b < -700.0) return -700.0;
        if (b > 700.0) throw NumericError("warped geodesic bracket failed", fa);
        fb = f(b);
        if ((fa <= 0.0) != (fb <= 0.0)) return brent(f, a, b, fa, fb, 1e-13);
        if (fb == 0.0) return b;
    }
    throw NumericError("warped geodesic bracket failed", fb);
}

// Brent root finder on [a,b] with f(a), f(b) of opposite sign.
double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
             double xtol) {
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
        double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = e = m;
        } else {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
    }
    throw NumericError("warped geodesic root find did not converge", std::abs(fb));
}

}  // namespace

WarpedGeodesic warped_solve(const ModelPoint& p, const ModelPoint& q) {
    double x1 = p.x[0], y1 = p.x[1], x2 = q.x[0], y2 = q.x[1];
    double dx = x2 - x1;
    WarpedGeodesic out;
    if (dx == 0.0) {
        out.p1 = 0.0;
        out.length = std::abs(y2 - y1);
        out.initial_tangent = {0.0, y2 >= y1 ? 1.0 : -1.0};
        if (out.length == 0.0) out.initial_tangent = {0.0, 0.0};
        return out;
    }
    double sx = dx > 0.0 ? 1.0 : -1.0;
    double X = std::abs(dx);
    double ylo = std::min(y1, y2), yhi = std::max(y1, y2);
    double spread = yhi - ylo;

    // dx of the monotone path at p1 = 1 and at p1 = W(yhi) (the two branch
    // boundaries); X below dx1 -> plain Clairaut constant in (0,1], between
    // the two -> turning height above yhi parametrized by log-offset,
    // beyond dx_crit -> genuine turning point above both endpoints.
    double dx1 = spread > 0.0 ? warped_plain(1.0, ylo, yhi).dx : 0.0;
    double dx_crit =
        spread > 0.0 ? warped_leg_sub(yhi, 0.0, 0.0, std::sqrt(spread)).dx : 0.0;

    double p1;                  // |Clairaut constant|
    double w1_minus_p1;         // W(y1) - p1, computed without cancellation
    LegIntegral total;
    bool turning = false;
    double W1 = warped_w(y1);
    if (X <= dx1) {
        auto f = [&](double pp) { return warped_plain(pp, ylo, yhi).dx - X; };
        p1 = brent(f, 0.0, 1.0, -X, dx1 - X, 1e-14);
        total = warped_plain(p1, ylo, yhi);
        w1_minus_p1 = (1.0 - p1) + std::exp(-y1);
    } else if (X <= dx_crit) {
        // monotone path whose (virtual) turning height is yhi + e^tau
        auto mono = [&](double tau) {
            double d = std::exp(tau);
            return warped_leg_sub(yhi, d, std::sqrt(d), std::sqrt(d + spread));
        };
        double tau = brent_log([&](double t) { return mono(t).dx - X; }, 0.0, false);
        total = mono(tau);
        double d = std::exp(tau);
        p1 = 1.0 + std::exp(-yhi) * std::exp(-d);
        w1_minus_p1 = std::exp(-y1) * (-std::expm1(-(d + (yhi - y1))));
    } else {
        turning = true;
        auto legs = [&](double tau) {
            double d = std::exp(tau);
            auto l1 = warped_leg_sub(yhi, d, 0.0, std::sqrt(d + (yhi - y1)));
            auto l2 = warped_leg_sub(yhi, d, 0.0, std::sqrt(d + (yhi - y2)));
            return LegIntegral{l1.dx + l2.dx, l1.len + l2.len};
        };
        double tau = brent_log([&](double t) { return legs(t).dx - X; }, 0.0, true);
        total = legs(tau);
        double d = std::exp(tau);
        p1 = 1.0 + std::exp(-yhi) * std::exp(-d);
        w1_minus_p1 = std::exp(-y1) * (-std::expm1(-(d + (yhi - y1))));
    }

    double G1 = std::max(0.0, w1_minus_p1 * (W1 + p1) / (W1 * W1));
    double vy = std::sqrt(G1);
    if (!turning) vy *= (y2 >= y1 ? 1.0 : -1.0);
    out.p1 = sx * p1;
    out.length = total.len;
    out.initial_tangent = {sx * p1 / (W1 * W1), vy};
    return out;
}

namespace {

// RK4 integration of the warped geodesic Hamiltonian system (p1 conserved).
HpState warped_geodesic_integrate(double x0, double y0, double vx, double vy, double t) {
    double W0 = warped_w(y0);
    double p1 = W0 * W0 * vx;
    double speed = std::sqrt(sqr(W0 * vx) + sqr(vy));
    if (speed == 0.0 || t == 0.0) return {x0, y0, vx, vy};
    double arc = std::abs(t) * speed;
    int n = (int)std::max(64.0, std::ceil(arc / 0.005));
    double h = t / n;
    double x = x0, y = y0, p2 = vy;
    auto deriv = [&](double yy, double pp2, double& dy, double& dp2, double& dx) {
        double W = warped_w(yy);
        dx = p1 / (W * W);
        dy = pp2;
        dp2 = -std::exp(-yy) * p1 * p1 / (W * W * W);
    };
    for (int i = 0; i < n; ++i) {
        double k1y, k1p, k1x, k2y, k2p, k2x, k3y, k3p, k3x, k4y, k4p, k4x;
        deriv(y, p2, k1y, k1p, k1x);
        deriv(y + 0.5 * h * k1y, p2 + 0.5 * h * k1p, k2y, k2p, k2x);
        deriv(y + 0.5 * h * k2y, p2 + 0.5 * h * k2p, k3y, k3p, k3x);
        deriv(y + h * k3y, p2 + h * k3p, k4y, k4p, k4x);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        p2 += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    double W = warped_w(y);
    return {x, y, p1 / (W * W), p2};
}

}  // namespace

// ---------------------------------------------------------------- geodesics

double distance(const ModelPoint& p, const ModelPoint& q) {
    if (p.model != q.model) throw DomainError("distance: model mismatch");
    check_domain(p);
    check_domain(q);
    switch (p.model.kind) {
        case ModelKind::Euclidean:
        case ModelKind::FlatTorusCover: {
            double s = 0.0;
            for (std::size_t i = 0; i < p.x.size(); ++i) s += sqr(q.x[i] - p.x[i]);
            return std::sqrt(s);
        }
        case ModelKind::UpperHalfPlane:
            return hp_distance(p.x[0], p.x[1], q.x[0], q.x[1]);
        case ModelKind::PoincareDisk: {
            double dz = sqr(q.x[0] - p.x[0]) + sqr(q.x[1] - p.x[1]);
            double a = 1.0 - sqr(p.x[0]) - sqr(p.x[1]);
            double b = 1.0 - sqr(q.x[0]) - sqr(q.x[1]);
            return dist_from_u(2.0 * dz / (a * b));
        }
        case ModelKind::FermiStrip: {
            double r1 = p.x[1], r2 = q.x[1], dx = q.x[0] - p.x[0];
            double u = std::cosh(r1) * std::cosh(r2) * coshm1(dx) + coshm1(r1 - r2);
            return dist_from_u(u);
        }
        case ModelKind::HyperbolicPolar: {
            double r1 = p.x[0], r2 = q.x[0], dt = q.x[1] - p.x[1];
            double u = coshm1(r1 - r2) +
                       std::sinh(r1) * std::sinh(r2) * 2.0 * sqr(std::sin(0.5 * dt));
            return dist_from_u(u);
        }
        case ModelKind::WarpedXY:
            return warped_solve(p, q).length;
    }
    return 0.0;
}

ModelVector exp_map_with_velocity(const ModelVector& v, double t) {
    check_domain(v.base);
    const ModelId m = v.base.model;
    switch (m.kind) {
        case ModelKind::Euclidean:
        case ModelKind::FlatTorusCover: {
            std::vector<double> x = v.base.x;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * v.v[i];
            return ModelVector(ModelPoint(m, x), v.v);
        }
        case ModelKind::UpperHalfPlane: {
            double speed = norm(v);
            if (speed == 0.0) return v;
            double scale = v.base.x[1] / std::hypot(v.v[0], v.v[1]);
            HpState s = hp_unit_geodesic(v.base.x[0], v.base.x[1], v.v[0] * scale,
                                         v.v[1] * scale, t * speed);
            return ModelVector(ModelPoint(m, {s.x, s.y}), {s.vx * speed, s.vy * speed});
        }
        case ModelKind::PoincareDisk:
        case ModelKind::FermiStrip:
        case ModelKind::HyperbolicPolar: {
            ModelVector hv = to_half_plane(v);
            ModelVector hout = exp_map_with_velocity(hv, t);
            return from_half_plane(m, hout);
        }
        case ModelKind::WarpedXY: {
            HpState s = warped_geodesic_integrate(v.base.x[0], v.base.x[1], v.v[0], v.v[1], t);
            return ModelVector(ModelPoint(m, {s.x, s.y}), {s.vx, s.vy});
        }
    }
    throw DomainError("exp_map: unsupported model");
}

ModelPoint exp_map(const ModelVector& v, double t) { return exp_map_with_velocity(v, t).base; }

ModelVector log_map(const ModelPoint& p, const ModelPoint& q) {
    if (p.model != q.model) throw DomainError("log_map: model mismatch");
    check_domain(p);
    check_domain(q);
    const ModelId m = p.model;
    switch (m.kind) {
        case ModelKind::Euclidean:
        case ModelKind::FlatTorusCover: {
            std::vector<double> d(p.x.size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = q.x[i] - p.x[i];
            return ModelVector(p, d);
        }
        case ModelKind::UpperHalfPlane:
            return hp_log(p, q);
        case ModelKind::PoincareDisk:
        case ModelKind::FermiStrip:
        case ModelKind::HyperbolicPolar: {
            ModelVector hv = hp_log(to_half_plane(p), to_half_plane(q));
            return from_half_plane(m, hv);
        }
        case ModelKind::WarpedXY: {
            auto g = warped_solve(p, q);
            return ModelVector(p, {g.length * g.initial_tangent[0], g.length * g.initial_tangent[1]});
        }
    }
    throw DomainError("log_map: unsupported model");
}

ModelPoint geodesic_point(const ModelPoint& p, const ModelPoint& q, double s) {
    double d = distance(p, q);
    if (s < -1e-9 || s > d + 1e-9) throw DomainError("geodesic_point: arclength out of range");
    if (d == 0.0) return p;
    s = std::clamp(s, 0.0, d);
    if (p.model.kind == ModelKind::Euclidean || p.model.kind == ModelKind::FlatTorusCover) {
        std::vector<double> x(p.x.size());
        double f = s / d;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = p.x[i] + f * (q.x[i] - p.x[i]);
        return ModelPoint(p.model, x);
    }
    return exp_map(normalized(log_map(p, q)), s);
}

std::vector<ModelVector> covariant_acceleration(const ModelId&,
                                                const std::vector<ModelPoint>& curve, double dt,
                                                int stencil) {
    if ((int)curve.size() < std::max(5, stencil))
        throw DomainError("covariant_acceleration: need at least 5 samples");
    std::vector<ModelVector> out;
    const int n = (int)curve.size();
    for (int i = 2; i + 2 < n; ++i) {
        auto c = [&](int j, int k) { return curve[j].x[k]; };
        std::array<double, 2> vel{}, acc{};
        for (int k = 0; k < 2; ++k) {
            vel[k] = (-c(i + 2, k) + 8.0 * c(i + 1, k) - 8.0 * c(i - 1, k) + c(i - 2, k)) /
                     (12.0 * dt);
            acc[k] = (-c(i + 2, k) + 16.0 * c(i + 1, k) - 30.0 * c(i, k) + 16.0 * c(i - 1, k) -
                      c(i - 2, k)) /
                     (12.0 * dt * dt);
        }
        auto gamma = christoffel_contract(curve[i], vel, vel);
        out.emplace_back(curve[i], std::vector<double>{acc[0] + gamma[0], acc[1] + gamma[1]});
    }
    return out;
}

}  // namespace escortlab
