#include "escortlab/deck.hpp"

#include <cmath>
#include <complex>

namespace escortlab {

namespace {

std::array<double, 4> mat_mul(const std::array<double, 4>& m, const std::array<double, 4>& n) {
    return {m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3], m[2] * n[0] + m[3] * n[2],
            m[2] * n[1] + m[3] * n[3]};
}

std::array<double, 4> mat_normalize(std::array<double, 4> m) {
    double det = m[0] * m[3] - m[1] * m[2];
    if (det <= 0.0) throw DomainError("moebius matrix must have positive determinant");
    double s = 1.0 / std::sqrt(det);
    for (double& e : m) e *= s;
    // fix the +-I ambiguity for stable comparisons
    if (m[0] + m[3] < 0.0 || (m[0] + m[3] == 0.0 && (m[1] < 0.0 || (m[1] == 0.0 && m[2] < 0.0))))
        for (double& e : m) e = -e;
    return m;
}

}  // namespace

DeckTransformation deck_identity(const ModelId& model) {
    DeckTransformation g;
    g.model = model;
    return g;
}

DeckTransformation lattice_translation(const ModelId& model, std::vector<double> shift) {
    if (model.kind != ModelKind::FlatTorusCover && model.kind != ModelKind::Euclidean)
        throw DomainError("lattice translation requires a euclidean cover");
    DeckTransformation g;
    g.kind = DeckTransformation::Kind::LatticeTranslation;
    g.model = model;
    g.shift = std::move(shift);
    return g;
}

DeckTransformation moebius(const ModelId& model, const std::array<double, 4>& mat) {
    if (!is_hyperbolic_chart(model)) throw DomainError("moebius deck requires a hyperbolic chart");
    DeckTransformation g;
    g.kind = DeckTransformation::Kind::Moebius;
    g.model = model;
    g.mat = mat_normalize(mat);
    return g;
}

DeckTransformation moebius_scaling(const ModelId& model, double lambda) {
    return moebius(model, {lambda, 0.0, 0.0, 1.0 / lambda});
}

DeckTransformation x_shift(const ModelId& model, double t) {
    if (model.kind != ModelKind::WarpedXY && model.kind != ModelKind::FermiStrip)
        throw DomainError("x-shift deck requires warped-xy or fermi-strip");
    DeckTransformation g;
    g.kind = DeckTransformation::Kind::XShift;
    g.model = model;
    g.t = t;
    return g;
}

ModelPoint deck_apply(const DeckTransformation& g, const ModelPoint& p) {
    if (g.model != p.model) throw DomainError("deck_apply: model mismatch");
    switch (g.kind) {
        case DeckTransformation::Kind::Identity:
            return p;
        case DeckTransformation::Kind::LatticeTranslation: {
            std::vector<double> x = p.x;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += g.shift[i];
            return ModelPoint(p.model, x);
        }
        case DeckTransformation::Kind::XShift:
            return ModelPoint(p.model, {p.x[0] + g.t, p.x[1]});
        case DeckTransformation::Kind::Moebius: {
            ModelPoint h = to_half_plane(p);
            std::complex<double> z(h.x[0], h.x[1]);
            std::complex<double> w = (g.mat[0] * z + g.mat[1]) / (g.mat[2] * z + g.mat[3]);
            return from_half_plane(p.model, ModelPoint(upper_half_plane(), {w.real(), w.imag()}));
        }
    }
    return p;
}

ModelVector deck_apply(const DeckTransformation& g, const ModelVector& v) {
    switch (g.kind) {
        case DeckTransformation::Kind::Identity:
            return v;
        case DeckTransformation::Kind::LatticeTranslation:
        case DeckTransformation::Kind::XShift:
            return ModelVector(deck_apply(g, v.base), v.v);
        case DeckTransformation::Kind::Moebius: {
            ModelVector h = to_half_plane(v);
            std::complex<double> z(h.base.x[0], h.base.x[1]);
            std::complex<double> den = g.mat[2] * z + g.mat[3];
            std::complex<double> w = (g.mat[0] * z + g.mat[1]) / den;
            std::complex<double> dz = 1.0 / (den * den);  // det = 1
            std::complex<double> dv = dz * std::complex<double>(h.v[0], h.v[1]);
            ModelVector hv(ModelPoint(upper_half_plane(), {w.real(), w.imag()}),
                           {dv.real(), dv.imag()});
            return from_half_plane(v.base.model, hv);
        }
    }
    return v;
}

DeckTransformation deck_compose(const DeckTransformation& g, const DeckTransformation& h) {
    if (g.model != h.model) throw DomainError("deck_compose: model mismatch");
    if (g.kind == DeckTransformation::Kind::Identity) return h;
    if (h.kind == DeckTransformation::Kind::Identity) return g;
    if (g.kind != h.kind) throw DomainError("deck_compose: mixed deck kinds unsupported");
    DeckTransformation out = g;
    switch (g.kind) {
        case DeckTransformation::Kind::LatticeTranslation:
            for (std::size_t i = 0; i < out.shift.size(); ++i) out.shift[i] += h.shift[i];
            break;
        case DeckTransformation::Kind::XShift:
            out.t += h.t;
            break;
        case DeckTransformation::Kind::Moebius:
            out.mat = mat_normalize(mat_mul(g.mat, h.mat));
            break;
        default:
            break;
    }
    return out;
}

DeckTransformation deck_inverse(const DeckTransformation& g) {
    DeckTransformation out = g;
    switch (g.kind) {
        case DeckTransformation::Kind::Identity:
            break;
        case DeckTransformation::Kind::LatticeTranslation:
            for (double& s : out.shift) s = -s;
            break;
        case DeckTransformation::Kind::XShift:
            out.t = -g.t;
            break;
        case DeckTransformation::Kind::Moebius:
            out.mat = mat_normalize({g.mat[3], -g.mat[1], -g.mat[2], g.mat[0]});
            break;
    }
    return out;
}

DeckTransformation deck_pow(const DeckTransformation& g, long n) {
    DeckTransformation base = n < 0 ? deck_inverse(g) : g;
    long k = n < 0 ? -n : n;
    DeckTransformation out = deck_identity(g.model);
    for (long i = 0; i < k; ++i) out = deck_compose(out, base);
    return out;
}

LiftedOrbit lift_orbit(const ModelId& cover, const std::vector<DeckTransformation>& generators,
                       const std::vector<ModelPoint>& base_orbit, double step_bound) {
    LiftedOrbit out;
    if (base_orbit.empty()) return out;
    std::size_t ng = generators.size();
    DeckTransformation word = deck_identity(cover);
    std::vector<long> exponents(ng, 0);
    out.points.push_back(base_orbit.front());
    out.words.push_back(exponents);
    for (std::size_t i = 1; i < base_orbit.size(); ++i) {
        const ModelPoint& prev = out.points.back();
        // greedy continuation: adjust the deck word one generator at a time
        // until no candidate improves the distance to the previous point
        for (int pass = 0;; ++pass) {
            ModelPoint cur = deck_apply(word, base_orbit[i]);
            double best = distance(prev, cur);
            int best_gen = -1, best_dir = 0;
            for (std::size_t j = 0; j < ng; ++j) {
                for (int dir : {+1, -1}) {
                    DeckTransformation cand =
                        deck_compose(word, dir > 0 ? generators[j] : deck_inverse(generators[j]));
                    double d = distance(prev, deck_apply(cand, base_orbit[i]));
                    if (d < best - 1e-12) {
                        best = d;
                        best_gen = (int)j;
                        best_dir = dir;
                    }
                }
            }
            if (best_gen < 0) break;
            word = deck_compose(word, best_dir > 0 ? generators[best_gen]
                                                   : deck_inverse(generators[best_gen]));
            exponents[best_gen] += best_dir;
            if (pass > 64) throw LiftError("lift continuation did not settle", i);
        }
        ModelPoint lifted = deck_apply(word, base_orbit[i]);
        if (distance(prev, lifted) > step_bound)
            throw LiftError("step exceeds the declared continuation bound", i);
        out.points.push_back(lifted);
        out.words.push_back(exponents);
    }
    return out;
}

}  // namespace escortlab
