// escortlab: command-line driver for the escort/rotation toolkit.
//
// Exit codes: 0 success, 2 assertion failure, 3 numeric error, 4 config error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "escortlab/boundary.hpp"
#include "escortlab/deck.hpp"
#include "escortlab/ergodic.hpp"
#include "escortlab/escort.hpp"
#include "escortlab/flows.hpp"
#include "escortlab/io.hpp"
#include "escortlab/rotation.hpp"
#include "escortlab/svg.hpp"

using namespace escortlab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct AssertionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config_path;
    std::string out_dir = ".";
    long seed = 1;
    double horizon = 0.0;  // 0 = command default
    double tolerance = 0.0;
    std::string format = "jsonl";
    Config cfg;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "config file (sectioned key = value)");
    sub->add_option("--out", c.out_dir, "output directory");
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--horizon", c.horizon, "iterations n or flow time T");
    sub->add_option("--tolerance", c.tolerance, "assertion tolerance override");
    sub->add_option("--format", c.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
}

void load(Common& c) {
    if (!c.config_path.empty()) c.cfg = load_config(c.config_path);
    std::filesystem::create_directories(c.out_dir);
}

std::string out_path(const Common& c, const std::string& name) {
    return (std::filesystem::path(c.out_dir) / name).string();
}

void write_record(const Common& c, const std::string& command,
                  const std::vector<std::string>& outputs, double wall) {
    RunRecord rec;
    rec.command = command;
    rec.config = c.cfg;
    rec.config["seed"] = std::to_string(c.seed);
    if (c.horizon > 0.0) rec.config["horizon"] = format_double(c.horizon);
    rec.tool_version = kVersion;
    rec.wall_seconds = wall;
    rec.outputs = outputs;
    atomic_write(out_path(c, command + ".runrecord.jsonl"), rec.to_json_line() + "\n");
}

void require(bool ok, const std::string& what) {
    if (!ok) throw AssertionFailure(what);
}

// ---- commands -------------------------------------------------------------

int cmd_rotation_map(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    double a = config_number(c.cfg, "map.a", 0.3);
    double b = config_number(c.cfg, "map.b", 0.1);
    std::size_t n = (std::size_t)(c.horizon > 0 ? c.horizon : 1000);
    CoveredSystem sys;
    sys.model = flat_torus_cover(2);
    sys.generators = {lattice_translation(sys.model, {1.0, 0.0}),
                      lattice_translation(sys.model, {0.0, 1.0})};
    sys.lift_map = [a, b](const ModelPoint& p) {
        return make_point(flat_torus_cover(2), {p.x[0] + a, p.x[1] + b});
    };
    auto x0 = make_point(sys.model, {config_number(c.cfg, "map.x0", 0.0),
                                     config_number(c.cfg, "map.y0", 0.0)});
    auto est = rotation_vector_map(sys, x0, n);
    double s = est.norm > 0 ? est.norm / norm(est.vector) : 0.0;
    auto line = json_line({{"command", "rotation-map"}},
                          {{"vx", est.vector.v[0] * s},
                           {"vy", est.vector.v[1] * s},
                           {"norm", est.norm},
                           {"direction_gap", est.direction_gap},
                           {"horizon", (double)n}});
    atomic_write(out_path(c, "rotation-map.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "rotation-map", {"rotation-map.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_rotation_flow(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    std::string input = config_string(c.cfg, "flow.input", "");
    PointSequence seq;
    if (!input.empty()) {
        auto model = model_from_name(config_string(c.cfg, "flow.model", "upper-half-plane"));
        seq = sequence_from_csv(model, read_file(input));
    } else {
        // default fixture: unit-speed vertical geodesic in the half-plane
        double T = c.horizon > 0 ? c.horizon : 30.0;
        std::vector<ModelPoint> pts;
        std::vector<double> ts;
        for (int k = 0; k <= 300; ++k) {
            double t = T * k / 300.0;
            pts.push_back(make_point(upper_half_plane(), {0.0, std::exp(t)}));
            ts.push_back(t);
        }
        seq = make_sequence(upper_half_plane(), std::move(pts), std::move(ts));
    }
    auto est = rotation_vector_flow(seq);
    auto line = json_line({{"command", "rotation-flow"}},
                          {{"norm", est.norm},
                           {"direction_gap", est.direction_gap},
                           {"direction_defined", est.direction_defined ? 1.0 : 0.0},
                           {"horizon", est.horizon}});
    atomic_write(out_path(c, "rotation-flow.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "rotation-flow", {"rotation-flow.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_periodic_norm(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    double lambda = config_number(c.cfg, "orbit.lambda", 2.0);
    unsigned period = (unsigned)config_number(c.cfg, "orbit.period", 1.0);
    PeriodicOrbitSpec spec;
    spec.point = make_point(upper_half_plane(), {0.0, 1.0});
    spec.period = period;
    spec.rho = moebius_scaling(upper_half_plane(), lambda);
    double nrm = periodic_norm(spec);
    auto line = json_line({{"command", "periodic-norm"}},
                          {{"norm", nrm}, {"period", (double)period}, {"lambda", lambda}});
    atomic_write(out_path(c, "periodic-norm.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "periodic-norm", {"periodic-norm.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_past_future(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    double lambda = config_number(c.cfg, "system.lambda", 2.0);
    std::size_t n = (std::size_t)(c.horizon > 0 ? c.horizon : 200);
    CoveredSystem sys;
    sys.model = upper_half_plane();
    auto g = moebius_scaling(sys.model, lambda);
    sys.generators = {g};
    sys.lift_map = [g](const ModelPoint& p) { return deck_apply(g, p); };
    auto gi = deck_inverse(g);
    sys.lift_map_inverse = [gi](const ModelPoint& p) { return deck_apply(gi, p); };
    auto rep = past_future_compare(sys, make_point(sys.model, {0.0, 1.0}), n);
    auto line = json_line({{"command", "past-future"}},
                          {{"fwd_norm", rep.fwd.norm},
                           {"bwd_norm", rep.bwd.norm},
                           {"angle_fwd_vs_neg_bwd", rep.angle_fwd_vs_neg_bwd}});
    atomic_write(out_path(c, "past-future.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "past-future", {"past-future.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

OrbitGenerator random_moebius_ensemble(std::size_t seeds, std::uint64_t rng_seed) {
    // i.i.d. products of two fixed hyperbolic elements chosen by coin flip,
    // applied on the inside (x_n = g_1 g_2 ... g_n x_0) so the orbit converges
    // to a boundary point; the state carries the accumulated matrix on top of
    // the base point.  Both generators have nonnegative entries and unit
    // determinant: the product accumulates without cancellation and stays in
    // double range, and the determinant can be taken as 1 when applying the
    // map (a direct a*d - b*c evaluation would cancel catastrophically).
    std::array<double, 4> m1 = {std::exp(0.15), 0.0, 0.0, std::exp(-0.15)};
    std::array<double, 4> m2 = {std::cosh(0.2), std::sinh(0.2), std::sinh(0.2), std::cosh(0.2)};
    OrbitGenerator gen;
    gen.rng_seed = rng_seed;
    gen.step = [m1, m2, rng_seed](std::size_t si, const State& s, std::size_t k) {
        std::mt19937_64 rng(rng_seed ^ (0x9e3779b97f4a7c15ull * (si + 1)) ^ (k + 1));
        const auto& g = (rng() & 1u) != 0 ? m1 : m2;
        State t = s;
        t[0] = s[0] * g[0] + s[1] * g[2];
        t[1] = s[0] * g[1] + s[1] * g[3];
        t[2] = s[2] * g[0] + s[3] * g[2];
        t[3] = s[2] * g[1] + s[3] * g[3];
        return t;
    };
    gen.embed = [](const State& s) {
        // w = (a z + b) / (c z + d) with z = x0 + i y0 and det = 1, so
        // Im w = y0 / |c z + d|^2
        double a = s[0], b = s[1], cc = s[2], d = s[3], x = s[4], y = s[5];
        double dr = cc * x + d, di = cc * y;
        double den = dr * dr + di * di;
        double nr = a * x + b, ni = a * y;
        return make_point(upper_half_plane(), {(nr * dr + ni * di) / den, y / den});
    };
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.5, 2.0);
    for (std::size_t i = 0; i < seeds; ++i)
        gen.seeds.push_back({1.0, 0.0, 0.0, 1.0, ux(rng), uy(rng)});
    return gen;
}

OrbitGenerator single_isometry_ensemble(std::size_t seeds, std::uint64_t rng_seed) {
    // translation length 0.2: 2000 iterates stay inside double range
    auto g = moebius_scaling(upper_half_plane(), std::exp(0.1));
    OrbitGenerator gen;
    gen.rng_seed = rng_seed;
    gen.step = [g](std::size_t, const State& s, std::size_t) {
        auto q = deck_apply(g, make_point(upper_half_plane(), {s[0], s[1]}));
        return State{q.x[0], q.x[1]};
    };
    gen.embed = [](const State& s) { return make_point(upper_half_plane(), {s[0], s[1]}); };
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.2, 5.0);
    for (std::size_t i = 0; i < seeds; ++i) gen.seeds.push_back({ux(rng), uy(rng)});
    return gen;
}

int cmd_alignment_ensemble(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    std::string kind = config_string(c.cfg, "ensemble.kind", "random-product");
    std::size_t seeds = (std::size_t)config_number(c.cfg, "ensemble.seeds", 64);
    std::size_t n = (std::size_t)(c.horizon > 0 ? c.horizon : 2000);
    double delta = c.tolerance > 0 ? c.tolerance : 0.1;
    OrbitGenerator gen;
    if (kind == "random-product")
        gen = random_moebius_ensemble(seeds, (std::uint64_t)c.seed);
    else if (kind == "single-isometry")
        gen = single_isometry_ensemble(seeds, (std::uint64_t)c.seed);
    else
        throw ConfigError("ensemble.kind must be random-product or single-isometry");
    auto rep = alignment_ensemble_check(gen, n, delta);
    std::size_t escaping = 0, aligned = 0;
    for (auto& s : rep.per_seed) {
        escaping += s.escaping ? 1 : 0;
        aligned += (s.escaping && s.aligned) ? 1 : 0;
    }
    auto line = json_line({{"command", "alignment-ensemble"}, {"kind", kind}},
                          {{"fraction", rep.fraction},
                           {"escaping", (double)escaping},
                           {"aligned", (double)aligned},
                           {"seeds", (double)seeds},
                           {"n", (double)n},
                           {"delta", delta}});
    atomic_write(out_path(c, "alignment-ensemble.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "alignment-ensemble", {"alignment-ensemble.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_magnetic(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    double v = config_number(c.cfg, "magnetic.v", 2.0);
    double T = c.horizon > 0 ? c.horizon : 30.0;
    double dt = config_number(c.cfg, "magnetic.dt", 0.005 / std::max(1.0, v));
    auto cls = classify_magnetic(v);
    FlowState s0;
    if (cls.regime == MagneticRegime::Subcritical) {
        double r = cls.radius_or_distance;
        s0 = make_flow_state(
            ModelVector(make_point(hyperbolic_polar(), {r, 0.0}), {0.0, v / std::sinh(r)}));
    } else {
        double rbar = v > 1.0 ? cls.radius_or_distance : 0.0;
        s0 = make_flow_state(
            ModelVector(make_point(fermi_strip(), {0.0, rbar}), {v / std::cosh(rbar), 0.0}));
    }
    auto traj = magnetic_trajectory(s0, T, dt);
    auto csv = sequence_to_csv(traj.as_sequence());
    atomic_write(out_path(c, "magnetic.csv"), csv);
    const char* regime = cls.regime == MagneticRegime::Subcritical ? "subcritical"
                         : cls.regime == MagneticRegime::Horocyclic ? "horocyclic"
                                                                    : "supercritical";
    double measured_rate =
        distance(traj.points.front(), traj.points.back()) / std::abs(traj.times.back());
    auto line = json_line({{"command", "magnetic"}, {"regime", regime}},
                          {{"v", v},
                           {"radius_or_distance", cls.radius_or_distance},
                           {"escape_rate", cls.escape_rate},
                           {"measured_rate", measured_rate},
                           {"T", T}});
    atomic_write(out_path(c, "magnetic.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "magnetic", {"magnetic.csv", "magnetic.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_warped_demo(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    std::size_t n = (std::size_t)(c.horizon > 0 ? c.horizon : 1000);
    auto m = warped_xy();
    auto origin = make_point(m, {0.0, 0.0});
    double d = distance(origin, make_point(m, {(double)n, 0.0}));
    // escort directions of the (subsampled) orbits x_k = (±k, 0)
    std::size_t stride = std::max<std::size_t>(1, n / 150);
    std::vector<ModelPoint> fwd_pts, bwd_pts;
    std::vector<double> ts;
    for (std::size_t k = 0; k * stride <= n; ++k) {
        fwd_pts.push_back(make_point(m, {(double)(k * stride), 0.0}));
        bwd_pts.push_back(make_point(m, {-(double)(k * stride), 0.0}));
        ts.push_back((double)(k * stride));
    }
    auto fwd = make_sequence(m, std::move(fwd_pts), ts);
    auto bwd = make_sequence(m, std::move(bwd_pts), ts);
    auto ffit = fit_escort(fwd, alignment_statistic(fwd));
    auto bfit = fit_escort(bwd, alignment_statistic(bwd));
    // escort ray classification via its conserved quantities at the origin;
    // the finite-horizon direction estimate sits O((ln n)/n) off the E = p1^2
    // separatrix, so classify with a matching band
    double p1_escort = warped_w(0.0) * warped_w(0.0) * ffit.direction.v[0];
    double band = 10.0 * std::log((double)n + 1.0) / (double)n;
    double gap = 1.0 - p1_escort * p1_escort;
    auto type = std::abs(gap) <= band ? WarpedType::II
                                      : classify_warped(1.0, p1_escort);
    auto line = json_line({{"command", "warped-demo"},
                           {"type", type == WarpedType::II ? "II"
                                                           : (type == WarpedType::I ? "I" : "III")}},
                          {{"n", (double)n},
                           {"distance", d},
                           {"rate", d / (double)n},
                           {"fwd_dir_x", ffit.direction.v[0]},
                           {"fwd_dir_y", ffit.direction.v[1]},
                           {"bwd_dir_x", bfit.direction.v[0]},
                           {"bwd_dir_y", bfit.direction.v[1]}});
    atomic_write(out_path(c, "warped-demo.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "warped-demo", {"warped-demo.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_semiconj(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    double v = config_number(c.cfg, "magnetic.v", 2.0);
    double T = c.horizon > 0 ? c.horizon : 50.0;
    if (v <= 1.0) throw ConfigError("semiconj: supercritical speed v > 1 required");
    auto cls = classify_magnetic(v);
    double rbar = cls.radius_or_distance;
    FlowState s0 = make_flow_state(
        ModelVector(make_point(fermi_strip(), {0.0, rbar}), {v / std::cosh(rbar), 0.0}));
    double dt = 0.005 / std::max(1.0, v);
    auto subsample = [](const Trajectory& traj, double rate, std::size_t cap) {
        std::size_t N = traj.points.size();
        std::size_t stride = std::max<std::size_t>(1, N / cap);
        std::vector<ModelPoint> pts;
        std::vector<double> ts;
        for (std::size_t k = 0; k < N; k += stride) {
            pts.push_back(traj.points[k]);
            ts.push_back(std::abs(traj.times[k]) * rate);  // unit-rate time scale
        }
        return make_sequence(traj.model, std::move(pts), std::move(ts));
    };
    auto traj = magnetic_trajectory(s0, T, dt);
    auto back = magnetic_trajectory(s0, -T, dt);
    auto seq = subsample(traj, cls.escape_rate, 400);
    auto bseq = subsample(back, cls.escape_rate, 400);
    auto ffit = fit_escort(seq, alignment_statistic(seq));
    auto bfit = fit_escort(bseq, alignment_statistic(bseq));
    auto sc = build_semiconjugacy(seq, ffit.direction, bfit.direction);
    bool monotone = true;
    for (std::size_t j = 1; j < sc.a.size(); ++j)
        if (!(sc.a[j] > sc.a[j - 1])) monotone = false;
    auto line = json_line({{"command", "semiconj"}},
                          {{"v", v},
                           {"T", T},
                           {"slope", sc.slope},
                           {"monotone", monotone ? 1.0 : 0.0},
                           {"samples", (double)sc.times.size()}});
    atomic_write(out_path(c, "semiconj.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "semiconj", {"semiconj.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_geometry_suite(Common& c) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    std::size_t trials = (std::size_t)(c.horizon > 0 ? c.horizon : 2000);
    double tol = c.tolerance > 0 ? c.tolerance : 1e-7;
    std::mt19937_64 rng((std::uint64_t)c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<ModelId> models = {euclidean(2),        upper_half_plane(), poincare_disk(),
                                   fermi_strip(),       hyperbolic_polar(), warped_xy(),
                                   flat_torus_cover(2)};
    auto sample = [&](const ModelId& m) {
        switch (m.kind) {
            case ModelKind::UpperHalfPlane:
                return make_point(m, {2.0 * u(rng), std::exp(1.5 * u(rng))});
            case ModelKind::PoincareDisk: {
                double r = 0.85 * std::abs(u(rng)), th = M_PI * u(rng);
                return make_point(m, {r * std::cos(th), r * std::sin(th)});
            }
            case ModelKind::FermiStrip:
                return make_point(m, {2.0 * u(rng), 1.5 * u(rng)});
            case ModelKind::HyperbolicPolar:
                return make_point(m, {0.1 + 2.0 * std::abs(u(rng)), M_PI * u(rng)});
            case ModelKind::WarpedXY:
                return make_point(m, {3.0 * u(rng), 3.0 * u(rng)});
            default:
                return make_point(m, {3.0 * u(rng), 3.0 * u(rng)});
        }
    };
    for (const auto& m : models) {
        for (std::size_t i = 0; i < trials; ++i) {
            auto x = sample(m), y = sample(m), z = sample(m);
            double dxy = distance(x, y);
            auto mid = geodesic_point(x, y, 0.5 * dxy);
            double lhs = distance(z, mid) * distance(z, mid);
            double rhs = 0.5 * (distance(z, x) * distance(z, x) +
                                distance(z, y) * distance(z, y)) -
                         0.25 * dxy * dxy;
            require(lhs <= rhs + tol, "semi-parallelogram law violated: " + model_name(m));
            // convexity of t -> d(sigma1(t), sigma2(t)) checked at the midpoint
            auto w = sample(m);
            auto mid2 = geodesic_point(z, w, 0.5 * distance(z, w));
            require(distance(mid, mid2) <=
                        0.5 * (distance(x, z) + distance(y, w)) + tol,
                    "midpoint convexity violated: " + model_name(m));
            // exp/log round-trip
            if (dxy > 1e-9) {
                auto back = exp_map(log_map(x, y), 1.0);
                require(distance(back, y) < 1e-6 * std::max(1.0, dxy),
                        "exp/log round-trip failed: " + model_name(m));
            }
        }
    }
    // cone-chord bound on admissible hyperbolic triples
    std::size_t found = 0;
    auto hp = upper_half_plane();
    while (found < 1000) {
        auto x = sample(hp), y = sample(hp), z = sample(hp);
        double eps = 0.05 + 0.45 * std::abs(u(rng));
        if (!cone_contains(x, y, z, eps)) continue;
        auto gap = cone_chord_gap(x, y, z, eps);
        require(gap.lhs <= gap.rhs + tol, "cone-chord bound violated");
        ++found;
    }
    auto line = json_line({{"command", "geometry-suite"}, {"status", "pass"}},
                          {{"trials", (double)trials}, {"tolerance", tol}});
    atomic_write(out_path(c, "geometry-suite.jsonl"), line + "\n");
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "geometry-suite", {"geometry-suite.jsonl"}, wall);
    std::cout << line << "\n";
    return 0;
}

int cmd_plot(Common& c, const std::string& input, const std::string& style_name, double cone_d,
             double cone_eps) {
    load(c);
    auto t0 = std::chrono::steady_clock::now();
    std::string svg;
    std::string outname;
    if (cone_d > 0.0) {
        svg = render_cone_svg(cone_d, cone_eps);
        outname = "cone.svg";
    } else {
        auto model = model_from_name(config_string(c.cfg, "plot.model", "poincare-disk"));
        PointSequence seq;
        if (!input.empty())
            seq = sequence_from_csv(model, read_file(input));
        else
            seq = make_sequence(model, std::vector<ModelPoint>{}, std::vector<double>{});
        svg = render_svg(seq.points.empty() ? std::vector<PointSequence>{}
                                            : std::vector<PointSequence>{seq},
                         plot_style_from_name(style_name));
        outname = "plot.svg";
    }
    atomic_write(out_path(c, outname), svg);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_record(c, "plot", {outname}, wall);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"escortlab: rotation vectors, escorts, and boundary geometry"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common c;
    std::string plot_input, plot_style = "xy";
    double cone_d = 0.0, cone_eps = 0.2;

    auto* s_rmap = app.add_subcommand("rotation-map", "rotation vector of a covered map");
    auto* s_rflow = app.add_subcommand("rotation-flow", "rotation vector of a sampled flow");
    auto* s_pnorm = app.add_subcommand("periodic-norm", "norm of a periodic orbit class");
    auto* s_pf = app.add_subcommand("past-future", "forward vs backward rotation estimates");
    auto* s_align = app.add_subcommand("alignment-ensemble", "ensemble alignment fractions");
    auto* s_mag = app.add_subcommand("magnetic", "magnetic flow trajectory + classification");
    auto* s_warp = app.add_subcommand("warped-demo", "warped-metric distances and escorts");
    auto* s_semi = app.add_subcommand("semiconj", "semi-conjugacy to the geodesic flow");
    auto* s_geo = app.add_subcommand("geometry-suite", "randomized geometry property checks");
    auto* s_plot = app.add_subcommand("plot", "render a trajectory CSV or cone outline as SVG");
    for (auto* s : {s_rmap, s_rflow, s_pnorm, s_pf, s_align, s_mag, s_warp, s_semi, s_geo, s_plot})
        add_common(s, c);
    s_plot->add_option("--input", plot_input, "trajectory CSV");
    s_plot->add_option("--style", plot_style, "disk, half-plane, or xy");
    s_plot->add_option("--cone-d", cone_d, "render the cone [0,d]_eps instead");
    s_plot->add_option("--cone-eps", cone_eps, "cone epsilon");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (s_rmap->parsed()) return cmd_rotation_map(c);
        if (s_rflow->parsed()) return cmd_rotation_flow(c);
        if (s_pnorm->parsed()) return cmd_periodic_norm(c);
        if (s_pf->parsed()) return cmd_past_future(c);
        if (s_align->parsed()) return cmd_alignment_ensemble(c);
        if (s_mag->parsed()) return cmd_magnetic(c);
        if (s_warp->parsed()) return cmd_warped_demo(c);
        if (s_semi->parsed()) return cmd_semiconj(c);
        if (s_geo->parsed()) return cmd_geometry_suite(c);
        if (s_plot->parsed()) return cmd_plot(c, plot_input, plot_style, cone_d, cone_eps);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const AssertionFailure& e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
