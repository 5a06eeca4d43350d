#include "escortlab/flows.hpp"

#include <algorithm>
#include <cmath>

namespace escortlab {

namespace {

struct PhasePoint {
    std::array<double, 2> x{}, w{};  // position coords, velocity components
};

double phase_gap(const ModelId& m, const PhasePoint& a, const PhasePoint& b) {
    double dp = distance(ModelPoint(m, {a.x[0], a.x[1]}), ModelPoint(m, {b.x[0], b.x[1]}));
    double dv = std::hypot(a.w[0] - b.w[0], a.w[1] - b.w[1]);
    return dp + dv;
}

}  // namespace

FlowState make_flow_state(const ModelVector& v) {
    FlowState s;
    s.position = v.base;
    s.velocity = v;
    s.speed = norm(v);
    return s;
}

MagneticClass classify_magnetic(double v) {
    if (v <= 0.0) throw DomainError("classify_magnetic: speed must be positive");
    MagneticClass out;
    if (v < 1.0) {
        out.regime = MagneticRegime::Subcritical;
        out.radius_or_distance = std::atanh(v);
    } else if (v == 1.0) {
        out.regime = MagneticRegime::Horocyclic;
    } else {
        out.regime = MagneticRegime::Supercritical;
        out.radius_or_distance = std::atanh(1.0 / v);
        out.escape_rate = std::sqrt(v * v - 1.0);
    }
    return out;
}

PointSequence Trajectory::as_sequence() const {
    return make_sequence(model, points, times);
}

Trajectory magnetic_trajectory(const FlowState& start, double T, double dt) {
    const ModelId m = start.position.model;
    if (!is_hyperbolic_chart(m)) throw DomainError("magnetic_trajectory: hyperbolic charts only");
    if (dt <= 0.0 || dt > 0.01 / std::max(1.0, start.speed))
        throw DomainError("magnetic_trajectory: dt must be in (0, 0.01/max(1,speed)]");
    check_domain(start.position);
    const double v0 = start.speed;
    Trajectory out;
    out.model = m;
    if (v0 == 0.0) throw DomainError("magnetic_trajectory: zero speed");

    const double dir = T >= 0.0 ? 1.0 : -1.0;
    const double h = dir * dt;
    const std::size_t steps = (std::size_t)std::llround(std::abs(T) / dt);

    PhasePoint s{{start.position.x[0], start.position.x[1]},
                 {start.velocity.v[0], start.velocity.v[1]}};

    auto deriv = [&](const PhasePoint& p, PhasePoint& d) {
        ModelPoint pos(m, {p.x[0], p.x[1]});
        auto gamma = christoffel_contract(pos, p.w, p.w);
        ModelVector iv = rotate90(ModelVector(pos, {p.w[0], p.w[1]}));
        d.x = p.w;
        d.w = {iv.v[0] - gamma[0], iv.v[1] - gamma[1]};
    };

    auto record = [&](double t, const PhasePoint& p) {
        out.times.push_back(t);
        ModelPoint pos(m, {p.x[0], p.x[1]});
        out.points.push_back(pos);
        out.velocities.emplace_back(pos, std::vector<double>{p.w[0], p.w[1]});
    };

    record(0.0, s);
    for (std::size_t i = 1; i <= steps; ++i) {
        PhasePoint k1, k2, k3, k4, tmp;
        deriv(s, k1);
        for (int c = 0; c < 2; ++c) {
            tmp.x[c] = s.x[c] + 0.5 * h * k1.x[c];
            tmp.w[c] = s.w[c] + 0.5 * h * k1.w[c];
        }
        deriv(tmp, k2);
        for (int c = 0; c < 2; ++c) {
            tmp.x[c] = s.x[c] + 0.5 * h * k2.x[c];
            tmp.w[c] = s.w[c] + 0.5 * h * k2.w[c];
        }
        deriv(tmp, k3);
        for (int c = 0; c < 2; ++c) {
            tmp.x[c] = s.x[c] + h * k3.x[c];
            tmp.w[c] = s.w[c] + h * k3.w[c];
        }
        deriv(tmp, k4);
        for (int c = 0; c < 2; ++c) {
            s.x[c] += h / 6.0 * (k1.x[c] + 2.0 * k2.x[c] + 2.0 * k3.x[c] + k4.x[c]);
            s.w[c] += h / 6.0 * (k1.w[c] + 2.0 * k2.w[c] + 2.0 * k3.w[c] + k4.w[c]);
        }
        ModelPoint pos(m, {s.x[0], s.x[1]});
        if (!in_domain(pos))
            throw DomainError("magnetic_trajectory: left the chart domain at t = " +
                              std::to_string(dir * (double)i * dt));
        // renormalize the speed (conserved in the continuum)
        double sp = norm(ModelVector(pos, {s.w[0], s.w[1]}));
        if (sp > 0.0) {
            double f = v0 / sp;
            s.w[0] *= f;
            s.w[1] *= f;
        }
        record(dir * (double)i * dt, s);
    }
    return out;
}

double detect_period(const FlowState& start, const Trajectory& traj) {
    PhasePoint s0{{start.position.x[0], start.position.x[1]},
                  {start.velocity.v[0], start.velocity.v[1]}};
    const double scale = std::max(1.0, start.speed);
    std::size_t best = 0;
    double bestgap = 1e300;
    bool armed = false;  // wait to leave the start's neighborhood first
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        PhasePoint p{{traj.points[i].x[0], traj.points[i].x[1]},
                     {traj.velocities[i].v[0], traj.velocities[i].v[1]}};
        double g = phase_gap(traj.model, s0, p);
        if (!armed) {
            if (g > 0.5 * scale) armed = true;
            continue;
        }
        if (g < bestgap) {
            bestgap = g;
            best = i;
        } else if (best + 8 < i && bestgap < 1e-2 * scale) {
            break;  // passed the minimum
        }
    }
    if (best == 0 || bestgap > 1e-2 * scale)
        throw NumericError("detect_period: no phase-space return found", bestgap);
    // quadratic refinement on the squared gap around the best sample
    if (best == 0 || best + 1 >= traj.points.size()) return traj.times[best];
    auto gap_at = [&](std::size_t i) {
        PhasePoint p{{traj.points[i].x[0], traj.points[i].x[1]},
                     {traj.velocities[i].v[0], traj.velocities[i].v[1]}};
        double g = phase_gap(traj.model, s0, p);
        return g * g;
    };
    double f0 = gap_at(best - 1), f1 = gap_at(best), f2 = gap_at(best + 1);
    double denom = f0 - 2.0 * f1 + f2;
    double shift = denom > 0.0 ? 0.5 * (f0 - f2) / denom : 0.0;
    double dt = traj.times[best] - traj.times[best - 1];
    return traj.times[best] + std::clamp(shift, -1.0, 1.0) * dt;
}

WarpedRun warped_geodesic(const FlowState& start, double T, double dt) {
    if (start.position.model.kind != ModelKind::WarpedXY)
        throw DomainError("warped_geodesic: warped-xy model required");
    if (dt <= 0.0 || dt > 0.01 / std::max(1.0, start.speed))
        throw DomainError("warped_geodesic: dt must be in (0, 0.01/max(1,speed)]");
    WarpedRun run;
    run.traj.model = start.position.model;
    double x = start.position.x[0], y = start.position.x[1];
    double W0 = warped_w(y);
    double p1 = W0 * W0 * start.velocity.v[0];
    double p2 = start.velocity.v[1];
    run.p1 = p1;
    run.E = p1 * p1 / (W0 * W0) + p2 * p2;

    const double dir = T >= 0.0 ? 1.0 : -1.0;
    const double h = dir * dt;
    const std::size_t steps = (std::size_t)std::llround(std::abs(T) / dt);

    auto record = [&](double t) {
        double W = warped_w(y);
        ModelPoint pos(run.traj.model, {x, y});
        run.traj.times.push_back(t);
        run.traj.points.push_back(pos);
        run.traj.velocities.emplace_back(pos, std::vector<double>{p1 / (W * W), p2});
        double E = p1 * p1 / (W * W) + p2 * p2;
        run.E_drift = std::max(run.E_drift, std::abs(E - run.E));
    };
    auto deriv = [&](double yy, double pp2, double& dx, double& dy, double& dp2) {
        double W = warped_w(yy);
        dx = p1 / (W * W);
        dy = pp2;
        dp2 = -std::exp(-yy) * p1 * p1 / (W * W * W);
    };

    record(0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        double k1x, k1y, k1p, k2x, k2y, k2p, k3x, k3y, k3p, k4x, k4y, k4p;
        deriv(y, p2, k1x, k1y, k1p);
        deriv(y + 0.5 * h * k1y, p2 + 0.5 * h * k1p, k2x, k2y, k2p);
        deriv(y + 0.5 * h * k2y, p2 + 0.5 * h * k2p, k3x, k3y, k3p);
        deriv(y + h * k3y, p2 + h * k3p, k4x, k4y, k4p);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        p2 += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        record(dir * (double)i * dt);
    }
    run.p1_drift = 0.0;  // p1 is conserved exactly by construction
    return run;
}

WarpedType classify_warped(double E, double p1) {
    if (E < 0.0) throw DomainError("classify_warped: E must be nonnegative");
    double gap = E - p1 * p1;
    if (std::abs(gap) <= 1e-9) return WarpedType::II;
    return gap > 0.0 ? WarpedType::I : WarpedType::III;
}

RotationEstimate rotation_vector_through_map(const PointSequence& projected) {
    return rotation_vector_flow(projected);
}

SemiConjugacyData build_semiconjugacy(const PointSequence& traj, const ModelVector& v_fwd,
                                      const ModelVector& v_bwd, double min_slope) {
    traj.validate();
    if (!is_hyperbolic_chart(traj.model))
        throw VisibilityError("build_semiconjugacy: no boundary machinery for model " +
                              model_name(traj.model));
    // horosphere_project raises VisibilityError itself on coinciding endpoints
    ModelVector phi0 = horosphere_project(v_fwd, v_bwd);
    BoundaryPoint xi_plus = boundary_endpoint(v_fwd);

    SemiConjugacyData out;
    out.times = traj.times;
    const ModelPoint q0 = phi0.base;
    out.b.reserve(traj.points.size());
    for (const auto& p : traj.points) out.b.push_back(busemann_at(xi_plus, q0, p));

    // r-correction: running monotone envelope with slope >= min_slope
    out.a.resize(out.b.size());
    out.r.resize(out.b.size());
    out.a[0] = out.b[0];
    out.r[0] = 0.0;
    for (std::size_t i = 1; i < out.b.size(); ++i) {
        double floor_val = out.a[i - 1] + min_slope * (out.times[i] - out.times[i - 1]);
        out.a[i] = std::max(out.b[i], floor_val);
        out.r[i] = out.a[i] - out.b[i];
    }
    out.phi.reserve(out.b.size());
    for (double bt : out.b) out.phi.push_back(exp_map_with_velocity(phi0, bt));
    double span = out.times.back() - out.times.front();
    out.slope = span > 0.0 ? (out.a.back() - out.a.front()) / span : 0.0;
    return out;
}

}  // namespace escortlab
