#include "escortlab/escort.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace escortlab {

const std::vector<double> kDefaultEpsilonGrid = {0.5, 0.2, 0.1, 0.05, 0.02};
const std::vector<double> kDefaultKGrid = {10, 30, 100, 300};

void PointSequence::validate() const {
    if (points.empty()) throw DomainError("PointSequence: empty");
    if (points.size() != times.size()) throw DomainError("PointSequence: times mismatch");
    for (const auto& p : points)
        if (p.model != model) throw DomainError("PointSequence: mixed models");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw DomainError("PointSequence: times not increasing");
}

PointSequence make_sequence(const ModelId& model, std::vector<ModelPoint> points) {
    std::vector<double> times(points.size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = (double)i;
    return make_sequence(model, std::move(points), std::move(times));
}

PointSequence make_sequence(const ModelId& model, std::vector<ModelPoint> points,
                            std::vector<double> times) {
    PointSequence s{model, std::move(points), std::move(times)};
    s.validate();
    return s;
}

double escort_f(double eps) { return 2.0 * std::sqrt(1.0 - std::exp(-2.0 * eps)); }

bool cone_contains(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z, double eps) {
    if (eps < 0.0) throw DomainError("cone_contains: eps must be nonnegative");
    return std::exp(-eps) * distance(x, z) + distance(z, y) <= distance(x, y) + 1e-12;
}

ConeChordGap cone_chord_gap(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z,
                            double eps) {
    if (!cone_contains(x, y, z, eps)) throw DomainError("cone_chord_gap: z outside the cone");
    double dxz = distance(x, z);
    ConeChordGap out;
    out.rhs = 4.0 * (1.0 - std::exp(-2.0 * eps)) * dxz * dxz;
    double dxy = distance(x, y);
    ModelPoint w = geodesic_point(x, y, std::min(dxz, dxy));
    double dzw = distance(z, w);
    out.lhs = dzw * dzw;
    return out;
}

EscapeRate rate_of_escape(const PointSequence& seq) {
    seq.validate();
    if (seq.points.size() < 2) throw DomainError("rate_of_escape: need at least 2 points");
    EscapeRate out;
    double t0 = seq.times.front();
    for (std::size_t n = 1; n < seq.points.size(); ++n)
        out.curve.push_back(distance(seq.points.front(), seq.points[n]) / (seq.times[n] - t0));
    out.R_hat = out.curve.back();
    return out;
}

AlignmentReport alignment_statistic(const PointSequence& seq, const std::vector<double>& K_grid,
                                    const std::vector<double>& epsilon_grid) {
    seq.validate();
    const std::size_t N = seq.points.size();
    double maxK = 0.0;
    for (double K : K_grid) maxK = std::max(maxK, K);
    double t0 = seq.times.front();
    double span = seq.times.back() - t0;
    double minK_guard = K_grid.empty() ? 0.0 : *std::min_element(K_grid.begin(), K_grid.end());
    (void)maxK;
    if (N < 4 || span <= minK_guard)
        throw DomainError("alignment_statistic: sequence too short");

    AlignmentReport rep;
    rep.epsilon_grid = epsilon_grid;
    rep.K_grid = K_grid;

    std::vector<double> d0(N);
    for (std::size_t n = 0; n < N; ++n) d0[n] = distance(seq.points.front(), seq.points[n]);
    rep.R_hat = d0.back() / span;

    // L_hat = max over K of max over n of min_{K <= t_k <= t_n} (d0[n] - d(x_n,x_k))/t_k;
    // for each n, one descending pass over k serves every K threshold at once
    double L = 0.0;
    std::vector<double> Ks = K_grid;
    std::sort(Ks.begin(), Ks.end());
    for (std::size_t n = 1; n < N; ++n) {
        double tn = seq.times[n] - t0;
        if (tn <= Ks.front()) continue;
        double run = 1e300;
        double best_for_n = -1e300;
        int gi = (int)Ks.size() - 1;
        for (std::size_t kk = n + 1; kk-- > 0 && gi >= 0;) {
            double tk = seq.times[kk] - t0;
            while (gi >= 0 && tk < Ks[gi]) {
                if (Ks[gi] < tn && run < 1e300) best_for_n = std::max(best_for_n, run);
                --gi;
            }
            if (gi < 0) break;
            if (tk <= 0.0) break;
            run = std::min(run, (d0[n] - distance(seq.points[n], seq.points[kk])) / tk);
        }
        while (gi >= 0) {
            if (Ks[gi] < tn && run < 1e300) best_for_n = std::max(best_for_n, run);
            --gi;
        }
        if (best_for_n > L) L = best_for_n;
    }
    rep.L_hat = std::max(0.0, L);

    // admissible times: records of n -> d0[n] - e^{-eps/2} R_hat t_n; keep the
    // smallest epsilon whose record set reaches past the first K threshold
    std::vector<double> eps_sorted = epsilon_grid;
    std::sort(eps_sorted.begin(), eps_sorted.end());
    double minK = *std::min_element(K_grid.begin(), K_grid.end());
    for (double eps : eps_sorted) {
        double disc = std::exp(-0.5 * eps) * rep.R_hat;
        std::vector<std::size_t> records;
        double best = -1e300;
        for (std::size_t n = 1; n < N; ++n) {
            double s = d0[n] - disc * (seq.times[n] - t0);
            if (s >= best - 1e-12) {
                best = std::max(best, s);
                records.push_back(n);
            }
        }
        std::size_t usable = 0;
        for (std::size_t n : records)
            if (seq.times[n] - t0 >= minK) ++usable;
        if (usable >= 2) {
            rep.admissible_times = records;
            rep.achieved_eps = eps;
            break;
        }
        rep.achieved_eps = eps;  // no eps reaches past K: report the largest
    }
    return rep;
}

EscortFit fit_escort(const PointSequence& seq, const AlignmentReport& report) {
    seq.validate();
    EscortFit fit;
    fit.speed = report.R_hat;
    const ModelPoint& x0 = seq.points.front();
    if (report.R_hat <= 0.0) {
        fit.direction = ModelVector(x0, std::vector<double>(model_dim(seq.model), 0.0));
        return fit;
    }
    if (report.admissible_times.empty())
        throw FitError("fit_escort: no admissible times; run a longer orbit");

    std::size_t nstar = report.admissible_times.back();
    fit.direction = normalized(log_map(x0, seq.points[nstar]));

    // alpha_n(1): unit-arclength points along the chords to admissible x_n
    std::vector<ModelPoint> alpha1;
    std::size_t count = report.admissible_times.size();
    std::size_t stride = std::max<std::size_t>(1, count / 48);
    for (std::size_t i = 0; i < count; i += stride) {
        std::size_t n = report.admissible_times[i];
        double d = distance(x0, seq.points[n]);
        if (d < 1.0) continue;
        alpha1.push_back(geodesic_point(x0, seq.points[n], 1.0));
    }
    for (std::size_t i = 0; i < alpha1.size(); ++i)
        for (std::size_t j = i + 1; j < alpha1.size(); ++j)
            fit.cauchy_gap = std::max(fit.cauchy_gap, distance(alpha1[i], alpha1[j]));

    std::size_t first = report.admissible_times.front();
    std::size_t res_stride = std::max<std::size_t>(1, (seq.points.size() - first) / 256);
    for (std::size_t k = first; k < seq.points.size(); k += res_stride) {
        double d0k = distance(x0, seq.points[k]);
        if (d0k <= 0.0) continue;
        double r = distance(seq.points[k], exp_map(fit.direction, d0k)) / d0k;
        fit.residuals.emplace_back(k, r);
    }
    return fit;
}

SemicontractionReport semicontraction_check(const PointSequence& seq, std::size_t samples,
                                            std::uint64_t rng_seed) {
    seq.validate();
    const std::size_t N = seq.points.size();
    if (N < 3) throw DomainError("semicontraction_check: need at least 3 points");
    std::mt19937_64 rng(rng_seed);
    SemicontractionReport rep;
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t m = pick(rng), n = pick(rng);
        if (m == n) continue;
        std::size_t k = std::uniform_int_distribution<std::size_t>(
            1, N - 1 - std::max(m, n) > 0 ? N - 1 - std::max(m, n) : 1)(rng);
        if (std::max(m, n) + k >= N) continue;
        double before = distance(seq.points[m], seq.points[n]);
        double after = distance(seq.points[m + k], seq.points[n + k]);
        rep.worst_violation = std::max(rep.worst_violation, after - before);
    }
    rep.pass = rep.worst_violation <= 1e-9;
    return rep;
}

}  // namespace escortlab
