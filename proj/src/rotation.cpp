#include "escortlab/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "escortlab/boundary.hpp"

namespace escortlab {

namespace {

ModelPoint sample_point(const ModelId& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    switch (m.kind) {
        case ModelKind::PoincareDisk: {
            double r = 0.85 * std::sqrt(0.5 * (u(rng) + 1.0));
            double t = 3.14159265358979 * u(rng);
            return ModelPoint(m, {r * std::cos(t), r * std::sin(t)});
        }
        case ModelKind::UpperHalfPlane:
            return ModelPoint(m, {3.0 * u(rng), std::exp(1.5 * u(rng))});
        case ModelKind::FermiStrip:
        case ModelKind::WarpedXY:
            return ModelPoint(m, {3.0 * u(rng), 2.0 * u(rng)});
        case ModelKind::HyperbolicPolar:
            return ModelPoint(m, {1.5 + 1.4 * u(rng), 3.0 * u(rng)});
        default: {
            std::vector<double> x(model_dim(m));
            for (double& c : x) c = 4.0 * u(rng);
            return ModelPoint(m, x);
        }
    }
}

// Nelder-Mead on n parameters (n = 1 or 2 here)
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> start, double scale, int iters) {
    std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += scale;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);
    for (int it = 0; it < iters; ++it) {
        // order
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j)
                if (fv[j] < fv[i]) {
                    std::swap(fv[i], fv[j]);
                    std::swap(simplex[i], simplex[j]);
                }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / (double)n;
        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
            return p;
        };
        auto refl = blend(-1.0);
        double fr = f(refl);
        if (fr < fv[0]) {
            auto exp_p = blend(-2.0);
            double fe = f(exp_p);
            if (fe < fr) {
                simplex[n] = exp_p;
                fv[n] = fe;
            } else {
                simplex[n] = refl;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = refl;
            fv[n] = fr;
        } else {
            auto con = blend(0.5);
            double fc = f(con);
            if (fc < fv[n]) {
                simplex[n] = con;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    return simplex[best];
}

RotationEstimate estimate_from_sequence(const PointSequence& seq) {
    RotationEstimate est;
    est.base = seq.points.front();
    est.horizon = seq.times.back() - seq.times.front();
    EscapeRate rate = rate_of_escape(seq);
    AlignmentReport rep = alignment_statistic(seq);
    est.norm = rep.R_hat;
    try {
        EscortFit fit = fit_escort(seq, rep);
        est.vector = scaled(fit.direction, fit.speed);
        est.direction_gap = fit.cauchy_gap;
        est.direction_defined = fit.speed > 0.0;
    } catch (const FitError&) {
        est.vector =
            ModelVector(est.base, std::vector<double>(model_dim(seq.model), 0.0));
        est.direction_defined = false;
    }
    return est;
}

}  // namespace

double commutation_defect(const CoveredSystem& sys, std::size_t samples, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        ModelPoint p = sample_point(sys.model, rng);
        for (const auto& g : sys.generators) {
            ModelPoint lhs = sys.lift_map(deck_apply(g, p));
            ModelPoint rhs = deck_apply(g, sys.lift_map(p));
            worst = std::max(worst, distance(lhs, rhs));
        }
    }
    return worst;
}

RotationEstimate rotation_vector_map(const CoveredSystem& sys, const ModelPoint& x,
                                     std::size_t n) {
    if (n < 20) throw DomainError("rotation_vector_map: horizon too short");
    std::size_t stride = n > 1536 ? (n + 1023) / 1024 : 1;
    std::vector<ModelPoint> points;
    std::vector<double> times;
    ModelPoint cur = x;
    points.push_back(cur);
    times.push_back(0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        cur = sys.lift_map(cur);
        if (k % stride == 0 || k == n) {
            points.push_back(cur);
            times.push_back((double)k);
        }
    }
    return estimate_from_sequence(make_sequence(sys.model, std::move(points), std::move(times)));
}

RotationEstimate rotation_vector_flow(const PointSequence& lifted_trajectory) {
    lifted_trajectory.validate();
    RotationEstimate full = estimate_from_sequence(lifted_trajectory);
    // integer-time subsample must agree within the inter-sample displacement
    std::vector<ModelPoint> pts;
    std::vector<double> ts;
    double next_int = std::ceil(lifted_trajectory.times.front());
    double max_step = 0.0;
    for (std::size_t i = 0; i < lifted_trajectory.points.size(); ++i) {
        if (i > 0)
            max_step = std::max(
                max_step, distance(lifted_trajectory.points[i - 1], lifted_trajectory.points[i]));
        if (lifted_trajectory.times[i] >= next_int) {
            pts.push_back(lifted_trajectory.points[i]);
            ts.push_back(lifted_trajectory.times[i]);
            next_int = std::floor(lifted_trajectory.times[i]) + 1.0;
        }
    }
    if (ts.size() > 400) {
        RotationEstimate sub = estimate_from_sequence(
            make_sequence(lifted_trajectory.model, std::move(pts), std::move(ts)));
        double bound = 2.0 * max_step + 20.0 / full.horizon;
        if (std::abs(sub.norm - full.norm) > bound + 1e-6)
            throw NumericError("rotation_vector_flow: subsample disagreement",
                               std::abs(sub.norm - full.norm));
    }
    return full;
}

TranslationLengthResult translation_length(const DeckTransformation& rho, double search_radius) {
    TranslationLengthResult out;
    auto disp = [&](const ModelPoint& p) { return distance(p, deck_apply(rho, p)); };
    switch (rho.kind) {
        case DeckTransformation::Kind::Identity:
            out.argmin = ModelPoint(rho.model, std::vector<double>(model_dim(rho.model), 0.0));
            return out;
        case DeckTransformation::Kind::LatticeTranslation: {
            double s = 0.0;
            for (double c : rho.shift) s += c * c;
            out.length = std::sqrt(s);
            out.argmin = ModelPoint(rho.model, std::vector<double>(rho.shift.size(), 0.0));
            return out;
        }
        case DeckTransformation::Kind::XShift: {
            // the displacement d((0,y),(t,y)) is monotone in the metric width;
            // 1-d grid + local refinement over y in [-radius, radius]
            auto f = [&](double y) { return disp(ModelPoint(rho.model, {0.0, y})); };
            double besty = 0.0, bestv = f(0.0);
            for (int i = 0; i <= 80; ++i) {
                double y = -search_radius + 2.0 * search_radius * i / 80.0;
                double v = f(y);
                if (v < bestv) {
                    bestv = v;
                    besty = y;
                }
            }
            auto r = nelder_mead([&](const std::vector<double>& p) { return f(p[0]); },
                                 {besty}, 0.5, 120);
            besty = std::clamp(r[0], -search_radius, search_radius);
            out.length = f(besty);
            out.argmin = ModelPoint(rho.model, {0.0, besty});
            return out;
        }
        case DeckTransformation::Kind::Moebius: {
            // parametrize the half-plane by (x, log y)
            auto f = [&](const std::vector<double>& p) {
                ModelPoint z = from_half_plane(
                    rho.model, ModelPoint(upper_half_plane(), {p[0], std::exp(p[1])}));
                return disp(z);
            };
            std::vector<double> best = {0.0, 0.0};
            double bestv = f(best);
            for (int i = 0; i <= 28; ++i)
                for (int j = 0; j <= 28; ++j) {
                    std::vector<double> p = {-search_radius + 2.0 * search_radius * i / 28.0,
                                             -search_radius + 2.0 * search_radius * j / 28.0};
                    double v = f(p);
                    if (v < bestv) {
                        bestv = v;
                        best = p;
                    }
                }
            best = nelder_mead(f, best, 0.3, 200);
            best = nelder_mead(f, best, 1e-4, 120);
            out.length = f(best);
            out.argmin = from_half_plane(
                rho.model, ModelPoint(upper_half_plane(), {best[0], std::exp(best[1])}));
            return out;
        }
    }
    return out;
}

double periodic_norm(const PeriodicOrbitSpec& spec) {
    if (spec.period == 0) throw DomainError("periodic_norm: period must be positive");
    return translation_length(spec.rho).length / (double)spec.period;
}

double busemann_increment(const CoveredSystem& sys, const ModelPoint& x, const ModelVector& v) {
    ModelPoint fx = sys.lift_map(x);
    double b = busemann(v, x, fx);
    double d = distance(x, fx);
    if (std::abs(b) > d + 1e-6)
        throw NumericError("busemann_increment: |B| exceeds the distance bound", std::abs(b) - d);
    return b;
}

PastFutureReport past_future_compare(const CoveredSystem& sys, const ModelPoint& x,
                                     std::size_t n) {
    if (!sys.lift_map_inverse)
        throw DomainError("past_future_compare: inverse lift not provided");
    PastFutureReport rep;
    rep.fwd = rotation_vector_map(sys, x, n);
    CoveredSystem inv = sys;
    inv.lift_map = sys.lift_map_inverse;
    inv.lift_map_inverse = sys.lift_map;
    rep.bwd = rotation_vector_map(inv, x, n);
    if (rep.fwd.direction_defined && rep.bwd.direction_defined && rep.fwd.norm > 0.0 &&
        rep.bwd.norm > 0.0)
        rep.angle_fwd_vs_neg_bwd = angle_between(rep.fwd.vector, negated(rep.bwd.vector));
    return rep;
}

}  // namespace escortlab
