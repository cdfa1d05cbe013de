#pragma once

// Oracle evaluation from explicit vectors. Used by tests to cross-check the
// reduced-coordinate formulas.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "monolab/pairspace.hpp"

namespace monolab {

using Vec = std::vector<double>;

namespace vec {

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline Vec sub(const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}
inline Vec scaled(const Vec& a, double k) {
    Vec c(a);
    for (auto& x : c) x *= k;
    return c;
}

}  // namespace vec

struct VectorPair {
    Vec xi;
    Vec eta;
};

/// Random orthogonal matrix (row-major) from Gaussian entries and two passes
/// of modified Gram-Schmidt.
inline std::vector<Vec> random_rotation(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> q;
    while (static_cast<int>(q.size()) < dim) {
        Vec v(dim);
        for (auto& x : v) x = gauss(rng);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : q) {
                const double c = vec::dot(v, u);
                for (int i = 0; i < dim; ++i) v[i] -= c * u[i];
            }
        const double n = vec::norm(v);
        if (n < 1e-3) continue;
        q.push_back(vec::scaled(v, 1.0 / n));
    }
    return q;
}

/// xi = (r, 0, ...), eta = (s lambda, s sqrt(1 - lambda^2), 0, ...), then rotated.
inline VectorPair embed(const PairPoint& pt, int dim, std::uint64_t seed) {
    if (dim < 2) throw DomainError("embed: dim must be >= 2");
    Vec x(dim, 0.0), y(dim, 0.0);
    x[0] = pt.r();
    y[0] = pt.s() * pt.lambda();
    y[1] = pt.s() * std::sqrt(std::max(0.0, 1 - pt.lambda() * pt.lambda()));
    const auto q = random_rotation(dim, seed);
    VectorPair out{Vec(dim, 0.0), Vec(dim, 0.0)};
    for (int i = 0; i < dim; ++i) {
        out.xi[i] = vec::dot(q[i], x);
        out.eta[i] = vec::dot(q[i], y);
    }
    return out;
}

namespace raw {

/// phi(|x|) x with phi(0) x := 0
template <class Phi>
Vec radial_map(const Vec& x, Phi&& phi) {
    const double n = vec::norm(x);
    if (n == 0) return Vec(x.size(), 0.0);
    return vec::scaled(x, phi(n));
}

inline Vec Vp(double p, const Vec& x) {
    return radial_map(x, [&](double t) { return std::pow(t, (p - 2) / 2); });
}
inline Vec Vbar(double p, double mu, const Vec& x) {
    return radial_map(x, [&](double t) { return std::pow(mu + t * t, (p - 2) / 4); });
}
inline Vec VG(const NFunc& f, const Vec& x) {
    return radial_map(x, [&](double t) { return std::sqrt(f.value(t)) / t; });
}
/// A(x) = G(|x|) x / |x|^2
inline Vec AG(const NFunc& f, const Vec& x) {
    return radial_map(x, [&](double t) { return f.value(t) / (t * t); });
}

}  // namespace raw

/// Evaluates q directly from the vector formulas.
inline double eval_vectors(const QuantityId& q, const Vec& xi, const Vec& eta, const ShiftedTolerance& tol = {}) {
    using namespace raw;
    const Vec dv = vec::sub(xi, eta);
    const double d = vec::norm(dv);
    const double rx = vec::norm(xi);
    const double ry = vec::norm(eta);
    auto sq = [](const Vec& a) { return vec::dot(a, a); };
    return std::visit(
        overloaded{
            [&](const quantity::Jp& j) {
                auto m = [&](const Vec& x) { return radial_map(x, [&](double t) { return std::pow(t, j.p - 2); }); };
                return vec::dot(vec::sub(m(xi), m(eta)), dv);
            },
            [&](const quantity::JG& j) { return vec::dot(vec::sub(AG(j.f, xi), AG(j.f, eta)), dv); },
            [&](const quantity::VpDiffSq& v) { return sq(vec::sub(Vp(v.p, xi), Vp(v.p, eta))); },
            [&](const quantity::VbarDiffSq& v) { return sq(vec::sub(Vbar(v.p, v.mu, xi), Vbar(v.p, v.mu, eta))); },
            [&](const quantity::VGDiffSq& v) { return sq(vec::sub(VG(v.f, xi), VG(v.f, eta))); },
            [&](const quantity::CalG& c) {
                if (rx == 0) return c.f.value(ry);
                return d >= rx ? c.f.value(d) : c.f.value(rx) / (rx * rx) * d * d;
            },
            [&](const quantity::GShiftForm& g) { return eval_shifted(ShiftedNFunc(g.f, rx), d, tol); },
            [&](const quantity::GFracForm& g) { return g.f.slope(rx + ry) / (rx + ry) * d * d; },
            [&](const quantity::RhsPowerForm& f) {
                return detail::power_weight<double>(f, rx, ry) * d * d;
            },
            [&](const quantity::SumNorm& n) { return std::pow(d, n.power); },
            [&](const quantity::GOfDiff& g) { return g.f.value(d); },
            [&](const quantity::GSlopeOfDiff& g) { return d > 0 ? g.f.slope(d) * d : 0.0; },
            [&](const quantity::GSlopeSqForm& g) {
                const double gs = g.f.slope(rx + ry);
                return gs * gs * d * d;
            },
            [&](const quantity::GVGForm& g) {
                return g.f.value(rx + ry) * sq(vec::sub(VG(g.f, xi), VG(g.f, eta)));
            },
        },
        q);
}

/// Embeds pt in R^dim, applies a seeded rotation and evaluates from the vectors.
inline double reconstruct_and_eval(const QuantityId& q, const PairPoint& pt, int dim, std::uint64_t rotation_seed) {
    const auto v = embed(pt, dim, rotation_seed);
    return eval_vectors(q, v.xi, v.eta);
}

}  // namespace monolab
