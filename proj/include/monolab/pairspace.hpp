#pragma once

// Vector pairs (xi, eta) in reduced coordinates r = |xi|, s = |eta|,
// lambda = cos angle, and the scalar pair quantities built on them.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "monolab/errors.hpp"
#include "monolab/nfunc.hpp"

namespace monolab {

class PairPoint {
public:
    PairPoint() = default;

    /// Validates and normalizes: lambda is set to 1 when r * s == 0.
    static PairPoint make(double r, double s, double lambda, std::optional<int> dim = std::nullopt) {
        if (!std::isfinite(r) || !std::isfinite(s) || r < 0 || s < 0)
            throw DomainError("PairPoint: norms must be finite and >= 0");
        if (!std::isfinite(lambda) || lambda < -1 || lambda > 1)
            throw DomainError("PairPoint: lambda must lie in [-1, 1]");
        if (dim && *dim < 1) throw DomainError("PairPoint: dim must be positive");
        PairPoint p;
        p.r_ = r;
        p.s_ = s;
        p.lambda_ = (r == 0 || s == 0) ? 1.0 : lambda;
        p.dim_ = dim;
        return p;
    }

    double r() const { return r_; }
    double s() const { return s_; }
    double lambda() const { return lambda_; }
    std::optional<int> dim() const { return dim_; }

    bool operator==(const PairPoint& o) const {
        return r_ == o.r_ && s_ == o.s_ && lambda_ == o.lambda_;
    }

private:
    double r_ = 0;
    double s_ = 0;
    double lambda_ = 1;
    std::optional<int> dim_;
};

// |xi - eta|^2 = (r - s)^2 + 2 (1 - lambda) r s: both terms are nonnegative,
// so there is no cancellation near xi = eta.
template <class Real>
Real diff_sq(Real r, Real s, Real lambda) {
    const Real d = r - s;
    const Real v = d * d + 2 * (1 - lambda) * r * s;
    return v > 0 ? v : Real(0);
}

inline double diff_norm(const PairPoint& pt) { return std::sqrt(diff_sq(pt.r(), pt.s(), pt.lambda())); }

/// W_r^2 + W_s^2 - 2 lambda W_r W_s for radial profiles W_r, W_s.
template <class Real>
Real radial_diff_sq(Real wr, Real ws, Real lambda) {
    const Real d = wr - ws;
    const Real v = d * d + 2 * (1 - lambda) * wr * ws;
    return v > 0 ? v : Real(0);
}

// ---------------------------------------------------------------------------
// Quantity identifiers

namespace quantity {
/// <|xi|^{p-2} xi - |eta|^{p-2} eta, xi - eta>
struct Jp {
    double p;
};
/// <G(|xi|) xi/|xi|^2 - G(|eta|) eta/|eta|^2, xi - eta>
struct JG {
    NFunc f;
};
/// |V_p(xi) - V_p(eta)|^2, V_p(x) = |x|^{(p-2)/2} x
struct VpDiffSq {
    double p;
};
/// |Vbar_p^mu(xi) - Vbar_p^mu(eta)|^2, Vbar(x) = (mu + |x|^2)^{(p-2)/4} x
struct VbarDiffSq {
    double p;
    double mu;
};
/// |V_G(xi) - V_G(eta)|^2, V_G(x) = sqrt(G(|x|)) x/|x|
struct VGDiffSq {
    NFunc f;
};
/// Two-branch quantity: G(d) if d >= |xi|, else G(|xi|) d^2/|xi|^2.
struct CalG {
    NFunc f;
};
/// G_{|xi|}(|xi - eta|)
struct GShiftForm {
    NFunc f;
};
/// g(|xi|+|eta|)/(|xi|+|eta|) |xi - eta|^2
struct GFracForm {
    NFunc f;
};

enum class PowerShape {
    inv_sum_pow,       // d^2 / (r^{2-p} + s^{2-p})
    sum_pow_weighted,  // d^2 (r^{p-2} + s^{p-2})
    sum_weighted,      // (r + s)^{p-2} d^2
    quad_weighted,     // (r^2 + s^2)^{(p-2)/2} d^2
    shifted_quad,      // (mu + r^2 + s^2)^{(p-2)/2} d^2
};
/// Weighted |xi - eta|^2 forms appearing on the right of the power-growth estimates.
struct RhsPowerForm {
    double p;
    PowerShape shape;
    double mu = 0;
};
/// |xi - eta|^k
struct SumNorm {
    double power;
};
/// G(|xi - eta|)
struct GOfDiff {
    NFunc f;
};
/// g(d)/d * d^2 = g(d) d with d = |xi - eta|
struct GSlopeOfDiff {
    NFunc f;
};
/// g(|xi|+|eta|)^2 |xi - eta|^2
struct GSlopeSqForm {
    NFunc f;
};
/// G(|xi|+|eta|) |V_G(xi) - V_G(eta)|^2
struct GVGForm {
    NFunc f;
};
}  // namespace quantity

using QuantityId =
    std::variant<quantity::Jp, quantity::JG, quantity::VpDiffSq, quantity::VbarDiffSq,
                 quantity::VGDiffSq, quantity::CalG, quantity::GShiftForm, quantity::GFracForm,
                 quantity::RhsPowerForm, quantity::SumNorm, quantity::GOfDiff, quantity::GSlopeOfDiff,
                 quantity::GSlopeSqForm, quantity::GVGForm>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Reduced-coordinate formulas. Templated on the real type so the same code
// path runs in extended precision for oracle recomputation.

namespace detail {

/// r^a - s^a without cancellation when r and s are close.
template <class Real>
Real pow_diff(Real r, Real s, Real a) {
    using std::pow;
    if (r > 0 && s > 0 && r <= 2 * s && s <= 2 * r) {
        if (r >= s) return pow(s, a) * std::expm1(a * std::log1p((r - s) / s));
        return -pow(r, a) * std::expm1(a * std::log1p((s - r) / r));
    }
    return pow(r, a) - pow(s, a);
}

template <class Real>
Real jp_reduced(Real p, Real r, Real s, Real lambda) {
    using std::pow;
    if (s == Real(0)) return pow(r, p);
    if (r == Real(0)) return pow(s, p);
    // (1 - lambda) r s (r^{p-2} + s^{p-2}) + (r^{p-1} - s^{p-1}) (r - s)
    const Real rp1 = pow(r, p - 1);
    const Real sp1 = pow(s, p - 1);
    Real v = pow_diff(r, s, p - 1) * (r - s);
    if (lambda != Real(1)) v += (1 - lambda) * (s * rp1 + r * sp1);
    return v;
}

template <class Real>
Real jg_reduced(const NFunc& f, Real r, Real s, Real lambda) {
    if (s == Real(0)) return f.value<Real>(r);
    if (r == Real(0)) return f.value<Real>(s);
    const Real ar = f.value<Real>(r) / r;  // G(r)/r
    const Real as = f.value<Real>(s) / s;
    Real v = (ar - as) * (r - s);
    if (lambda != Real(1)) v += (1 - lambda) * (s * ar + r * as);
    return v;
}

template <class Real>
Real vbar_profile(Real p, Real mu, Real t) {
    if (t == Real(0)) return Real(0);
    return std::pow(mu + t * t, (p - 2) / 4) * t;
}

template <class Real>
Real power_weight(const quantity::RhsPowerForm& q, Real r, Real s) {
    using std::pow;
    const Real p = Real(q.p);
    switch (q.shape) {
        case quantity::PowerShape::inv_sum_pow:
            return 1 / (pow(r, 2 - p) + pow(s, 2 - p));
        case quantity::PowerShape::sum_pow_weighted:
            return pow(r, p - 2) + pow(s, p - 2);
        case quantity::PowerShape::sum_weighted:
            return pow(r + s, p - 2);
        case quantity::PowerShape::quad_weighted:
            return pow(r * r + s * s, (p - 2) / 2);
        case quantity::PowerShape::shifted_quad:
            return pow(Real(q.mu) + r * r + s * s, (p - 2) / 2);
    }
    return std::numeric_limits<Real>::quiet_NaN();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations

inline double eval_Jp(double p, const PairPoint& pt) {
    if (!(std::isfinite(p) && p > 1)) throw DomainError("eval_Jp: p must be > 1");
    return detail::jp_reduced(p, pt.r(), pt.s(), pt.lambda());
}

inline double eval_JG(const NFunc& f, const PairPoint& pt) {
    return detail::jg_reduced(f, pt.r(), pt.s(), pt.lambda());
}

namespace vdiff {
struct Vp {
    double p;
};
struct Vbar {
    double p;
    double mu;
};
struct VG {
    NFunc f;
};
}  // namespace vdiff
using VVariant = std::variant<vdiff::Vp, vdiff::Vbar, vdiff::VG>;

template <class Real = double>
Real eval_V_diff_sq_t(const VVariant& v, Real r, Real s, Real lambda) {
    return std::visit(
        overloaded{
            [&](const vdiff::Vp& q) {
                if (!(q.p > 0)) throw DomainError("Vp difference needs p > 0");
                const Real h = Real(q.p) / 2;
                const Real wr = std::pow(r, h);
                const Real ws = std::pow(s, h);
                const Real d = detail::pow_diff(r, s, h);
                const Real v = d * d + 2 * (1 - lambda) * wr * ws;
                return v > 0 ? v : Real(0);
            },
            [&](const vdiff::Vbar& q) {
                if (!(q.p > 0) || q.mu < 0) throw DomainError("Vbar difference needs p > 0, mu >= 0");
                return radial_diff_sq<Real>(detail::vbar_profile<Real>(q.p, q.mu, r),
                                            detail::vbar_profile<Real>(q.p, q.mu, s), lambda);
            },
            [&](const vdiff::VG& q) {
                using std::sqrt;
                const Real gr = q.f.value<Real>(r);
                const Real gs = q.f.value<Real>(s);
                const Real wr = sqrt(gr);
                const Real ws = sqrt(gs);
                // sqrt(a) - sqrt(b) = (a - b) / (sqrt(a) + sqrt(b))
                const Real d = wr + ws > 0 ? (gr - gs) / (wr + ws) : Real(0);
                const Real v = d * d + 2 * (1 - lambda) * wr * ws;
                return v > 0 ? v : Real(0);
            },
        },
        v);
}

inline double eval_V_diff_sq(const VVariant& v, const PairPoint& pt) {
    return eval_V_diff_sq_t<double>(v, pt.r(), pt.s(), pt.lambda());
}

struct CalGBranches {
    double far;   // G(d)
    double near;  // G(r) d^2 / r^2
};

/// Both branch formulas of the two-branch quantity at one point (r > 0).
inline CalGBranches calG_branches(const NFunc& f, const PairPoint& pt) {
    if (!(pt.r() > 0)) throw DomainError("calG_branches: |xi| must be > 0");
    const double d2 = diff_sq(pt.r(), pt.s(), pt.lambda());
    return {f.value(std::sqrt(d2)), f.value(pt.r()) / (pt.r() * pt.r()) * d2};
}

template <class Real = double>
Real calG_reduced(const NFunc& f, Real r, Real s, Real lambda) {
    if (r == Real(0)) return f.value<Real>(s);
    const Real d2 = diff_sq(r, s, lambda);
    const Real d = std::sqrt(d2);
    if (d >= r) return f.value<Real>(d);
    return f.value<Real>(r) / (r * r) * d2;
}

inline double eval_calG(const NFunc& f, const PairPoint& pt) {
    return calG_reduced<double>(f, pt.r(), pt.s(), pt.lambda());
}

inline double eval_gshift_form(const NFunc& f, const PairPoint& pt, const ShiftedTolerance& tol = {}) {
    if (!(pt.r() > 0)) throw DomainError("eval_gshift_form: |xi| must be > 0");
    return eval_shifted(ShiftedNFunc(f, pt.r()), diff_norm(pt), tol);
}

inline double eval_gfrac_form(const NFunc& f, const PairPoint& pt) {
    const double sum = pt.r() + pt.s();
    if (!(sum > 0)) throw DomainError("eval_gfrac_form: |xi| + |eta| must be > 0");
    return f.slope(sum) / sum * diff_sq(pt.r(), pt.s(), pt.lambda());
}

// ---------------------------------------------------------------------------
// Generic dispatch over QuantityId

/// Points where the quantity has no continuous extension (or none defined).
inline bool admissible(const QuantityId& q, const PairPoint& pt) {
    const bool zero = pt.r() == 0 || pt.s() == 0;
    return std::visit(
        overloaded{
            [&](const quantity::Jp& j) { return j.p > 1 || !zero; },
            [&](const quantity::GShiftForm&) { return pt.r() > 0; },
            [&](const quantity::GFracForm&) { return pt.r() + pt.s() > 0; },
            [&](const quantity::GSlopeSqForm&) { return pt.r() + pt.s() > 0; },
            [&](const quantity::RhsPowerForm& f) {
                using quantity::PowerShape;
                switch (f.shape) {
                    case PowerShape::inv_sum_pow:
                        return f.p <= 2 || !zero;
                    case PowerShape::sum_pow_weighted:
                        return f.p >= 2 || !zero;
                    case PowerShape::sum_weighted:
                    case PowerShape::quad_weighted:
                        return f.p >= 2 || pt.r() + pt.s() > 0;
                    case PowerShape::shifted_quad:
                        return f.p >= 2 || f.mu > 0 || pt.r() + pt.s() > 0;
                }
                return false;
            },
            [&](const auto&) { return true; },
        },
        q);
}

template <class Real = double>
Real evaluate_t(const QuantityId& q, Real r, Real s, Real lambda, const ShiftedTolerance& tol = {}) {
    using std::pow;
    using std::sqrt;
    return std::visit(
        overloaded{
            [&](const quantity::Jp& j) -> Real { return detail::jp_reduced<Real>(j.p, r, s, lambda); },
            [&](const quantity::JG& j) -> Real { return detail::jg_reduced<Real>(j.f, r, s, lambda); },
            [&](const quantity::VpDiffSq& v) -> Real {
                return eval_V_diff_sq_t<Real>(vdiff::Vp{v.p}, r, s, lambda);
            },
            [&](const quantity::VbarDiffSq& v) -> Real {
                return eval_V_diff_sq_t<Real>(vdiff::Vbar{v.p, v.mu}, r, s, lambda);
            },
            [&](const quantity::VGDiffSq& v) -> Real {
                return eval_V_diff_sq_t<Real>(vdiff::VG{v.f}, r, s, lambda);
            },
            [&](const quantity::CalG& c) -> Real { return calG_reduced<Real>(c.f, r, s, lambda); },
            [&](const quantity::GShiftForm& g) -> Real {
                if (!(r > 0)) throw DomainError("G-shift form needs |xi| > 0");
                return eval_shifted<Real>(ShiftedNFunc(g.f, static_cast<double>(r)),
                                          sqrt(diff_sq(r, s, lambda)), tol);
            },
            [&](const quantity::GFracForm& g) -> Real {
                const Real sum = r + s;
                if (!(sum > 0)) throw DomainError("g-fraction form needs |xi| + |eta| > 0");
                return g.f.slope<Real>(sum) / sum * diff_sq(r, s, lambda);
            },
            [&](const quantity::RhsPowerForm& f) -> Real {
                return detail::power_weight<Real>(f, r, s) * diff_sq(r, s, lambda);
            },
            [&](const quantity::SumNorm& n) -> Real { return pow(diff_sq(r, s, lambda), Real(n.power) / 2); },
            [&](const quantity::GOfDiff& g) -> Real { return g.f.value<Real>(sqrt(diff_sq(r, s, lambda))); },
            [&](const quantity::GSlopeOfDiff& g) -> Real {
                const Real d = sqrt(diff_sq(r, s, lambda));
                return d > 0 ? g.f.slope<Real>(d) * d : Real(0);
            },
            [&](const quantity::GSlopeSqForm& g) -> Real {
                const Real sum = r + s;
                if (!(sum > 0)) throw DomainError("g^2 form needs |xi| + |eta| > 0");
                const Real gs = g.f.slope<Real>(sum);
                return gs * gs * diff_sq(r, s, lambda);
            },
            [&](const quantity::GVGForm& g) -> Real {
                return g.f.value<Real>(r + s) * eval_V_diff_sq_t<Real>(vdiff::VG{g.f}, r, s, lambda);
            },
        },
        q);
}

inline double evaluate(const QuantityId& q, const PairPoint& pt, const ShiftedTolerance& tol = {}) {
    return evaluate_t<double>(q, pt.r(), pt.s(), pt.lambda(), tol);
}

/// Recomputes a quantity in extended precision (long double).
inline long double evaluate_extended(const QuantityId& q, const PairPoint& pt) {
    return evaluate_t<long double>(q, pt.r(), pt.s(), pt.lambda());
}

namespace detail {
inline std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}
inline const char* shape_name(quantity::PowerShape s) {
    switch (s) {
        case quantity::PowerShape::inv_sum_pow: return "inv_sum_pow";
        case quantity::PowerShape::sum_pow_weighted: return "sum_pow_weighted";
        case quantity::PowerShape::sum_weighted: return "sum_weighted";
        case quantity::PowerShape::quad_weighted: return "quad_weighted";
        case quantity::PowerShape::shifted_quad: return "shifted_quad";
    }
    return "?";
}
}  // namespace detail

/// Short human-readable label, stable across runs.
inline std::string quantity_name(const QuantityId& q) {
    using detail::num;
    return std::visit(
        overloaded{
            [](const quantity::Jp& v) { return "Jp[p=" + num(v.p) + "]"; },
            [](const quantity::JG& v) { return "JG[" + v.f.describe() + "]"; },
            [](const quantity::VpDiffSq& v) { return "VpDiffSq[p=" + num(v.p) + "]"; },
            [](const quantity::VbarDiffSq& v) { return "VbarDiffSq[p=" + num(v.p) + ",mu=" + num(v.mu) + "]"; },
            [](const quantity::VGDiffSq& v) { return "VGDiffSq[" + v.f.describe() + "]"; },
            [](const quantity::CalG& v) { return "CalG[" + v.f.describe() + "]"; },
            [](const quantity::GShiftForm& v) { return "GShiftForm[" + v.f.describe() + "]"; },
            [](const quantity::GFracForm& v) { return "GFracForm[" + v.f.describe() + "]"; },
            [](const quantity::RhsPowerForm& v) {
                std::string s = std::string("RhsPowerForm[") + detail::shape_name(v.shape) + ",p=" + num(v.p);
                if (v.shape == quantity::PowerShape::shifted_quad) s += ",mu=" + num(v.mu);
                return s + "]";
            },
            [](const quantity::SumNorm& v) { return "SumNorm[" + num(v.power) + "]"; },
            [](const quantity::GOfDiff& v) { return "GOfDiff[" + v.f.describe() + "]"; },
            [](const quantity::GSlopeOfDiff& v) { return "GSlopeOfDiff[" + v.f.describe() + "]"; },
            [](const quantity::GSlopeSqForm& v) { return "GSlopeSqForm[" + v.f.describe() + "]"; },
            [](const quantity::GVGForm& v) { return "GVGForm[" + v.f.describe() + "]"; },
        },
        q);
}

}  // namespace monolab
