#pragma once

// N-functions: closed-form families and their closures, derivatives,
// indices, Young conjugates and shifted functions G_a.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "monolab/errors.hpp"
#include "monolab/optimize.hpp"
#include "monolab/quadrature.hpp"

namespace monolab {

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

class NFunc;

namespace family {
struct Power {
    double p;
};
struct Zygmund {
    double p;
    double alpha;
};
struct Compose;
struct Product;
struct Sum;
struct Scale;
}  // namespace family

enum class FamilyKind { power, zygmund, compose, product, sum, scale };

/// Immutable, cheaply copyable handle to an N-function expression tree.
/// Evaluation is exact per family; derivatives follow the chain and
/// product rules, so no numerical differentiation is involved.
class NFunc {
public:
    static NFunc power(double p);
    static NFunc zygmund(double p, double alpha);
    static NFunc compose(NFunc outer, NFunc inner);
    static NFunc product(NFunc left, NFunc right);
    static NFunc sum(NFunc left, NFunc right);
    static NFunc scale(double c, NFunc inner);

    FamilyKind kind() const;

    /// Unchecked G(t), t >= 0.
    template <class Real = double>
    Real value(Real t) const;
    /// Unchecked g(t) = G'(t), t > 0.
    template <class Real = double>
    Real slope(Real t) const;

    const family::Power* as_power() const;
    const family::Zygmund* as_zygmund() const;
    const family::Compose* as_compose() const;
    const family::Product* as_product() const;
    const family::Sum* as_sum() const;
    const family::Scale* as_scale() const;

    std::string describe() const;

private:
    struct Node;
    explicit NFunc(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

namespace family {
struct Compose {
    NFunc outer;
    NFunc inner;
};
struct Product {
    NFunc left;
    NFunc right;
};
struct Sum {
    NFunc left;
    NFunc right;
};
struct Scale {
    double c;
    NFunc inner;
};
}  // namespace family

struct NFunc::Node {
    std::variant<family::Power, family::Zygmund, family::Compose, family::Product,
                 family::Sum, family::Scale>
        data;
};

inline NFunc NFunc::power(double p) {
    if (!(std::isfinite(p) && p > 0)) throw DomainError("power family needs finite p > 0");
    return NFunc(std::make_shared<const Node>(Node{family::Power{p}}));
}

inline NFunc NFunc::zygmund(double p, double alpha) {
    if (!(std::isfinite(p) && p > 1)) throw DomainError("zygmund family needs finite p > 1");
    if (!std::isfinite(alpha)) throw DomainError("zygmund family needs finite alpha");
    return NFunc(std::make_shared<const Node>(Node{family::Zygmund{p, alpha}}));
}

inline NFunc NFunc::compose(NFunc outer, NFunc inner) {
    return NFunc(std::make_shared<const Node>(Node{family::Compose{std::move(outer), std::move(inner)}}));
}

inline NFunc NFunc::product(NFunc left, NFunc right) {
    return NFunc(std::make_shared<const Node>(Node{family::Product{std::move(left), std::move(right)}}));
}

inline NFunc NFunc::sum(NFunc left, NFunc right) {
    return NFunc(std::make_shared<const Node>(Node{family::Sum{std::move(left), std::move(right)}}));
}

inline NFunc NFunc::scale(double c, NFunc inner) {
    if (!(std::isfinite(c) && c > 0)) throw DomainError("scale family needs finite c > 0");
    return NFunc(std::make_shared<const Node>(Node{family::Scale{c, std::move(inner)}}));
}

inline FamilyKind NFunc::kind() const { return static_cast<FamilyKind>(node_->data.index()); }

inline const family::Power* NFunc::as_power() const { return std::get_if<family::Power>(&node_->data); }
inline const family::Zygmund* NFunc::as_zygmund() const { return std::get_if<family::Zygmund>(&node_->data); }
inline const family::Compose* NFunc::as_compose() const { return std::get_if<family::Compose>(&node_->data); }
inline const family::Product* NFunc::as_product() const { return std::get_if<family::Product>(&node_->data); }
inline const family::Sum* NFunc::as_sum() const { return std::get_if<family::Sum>(&node_->data); }
inline const family::Scale* NFunc::as_scale() const { return std::get_if<family::Scale>(&node_->data); }

template <class Real>
Real NFunc::value(Real t) const {
    using std::log;
    using std::pow;
    if (t == Real(0)) return Real(0);
    switch (kind()) {
        case FamilyKind::power:
            return pow(t, Real(as_power()->p));
        case FamilyKind::zygmund: {
            const auto& z = *as_zygmund();
            const Real e = std::exp(Real(1));
            return pow(t, Real(z.p)) * pow(log(e + t), Real(z.alpha));
        }
        case FamilyKind::compose: {
            const auto& c = *as_compose();
            return c.outer.value<Real>(c.inner.value<Real>(t));
        }
        case FamilyKind::product: {
            const auto& c = *as_product();
            return c.left.value<Real>(t) * c.right.value<Real>(t);
        }
        case FamilyKind::sum: {
            const auto& c = *as_sum();
            return c.left.value<Real>(t) + c.right.value<Real>(t);
        }
        case FamilyKind::scale: {
            const auto& c = *as_scale();
            return Real(c.c) * c.inner.value<Real>(t);
        }
    }
    return std::numeric_limits<Real>::quiet_NaN();
}

template <class Real>
Real NFunc::slope(Real t) const {
    using std::log;
    using std::pow;
    switch (kind()) {
        case FamilyKind::power: {
            const Real p = Real(as_power()->p);
            return p * pow(t, p - 1);
        }
        case FamilyKind::zygmund: {
            const auto& z = *as_zygmund();
            const Real e = std::exp(Real(1));
            const Real p = Real(z.p);
            const Real a = Real(z.alpha);
            const Real L = log(e + t);
            // p t^{p-1} L^a + a t^p L^{a-1} / (e + t)
            return pow(t, p - 1) * pow(L, a - 1) * (p * L + a * t / (e + t));
        }
        case FamilyKind::compose: {
            const auto& c = *as_compose();
            const Real u = c.inner.value<Real>(t);
            return c.outer.slope<Real>(u) * c.inner.slope<Real>(t);
        }
        case FamilyKind::product: {
            const auto& c = *as_product();
            return c.left.slope<Real>(t) * c.right.value<Real>(t) +
                   c.left.value<Real>(t) * c.right.slope<Real>(t);
        }
        case FamilyKind::sum: {
            const auto& c = *as_sum();
            return c.left.slope<Real>(t) + c.right.slope<Real>(t);
        }
        case FamilyKind::scale: {
            const auto& c = *as_scale();
            return Real(c.c) * c.inner.slope<Real>(t);
        }
    }
    return std::numeric_limits<Real>::quiet_NaN();
}

inline std::string NFunc::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind()) {
        case FamilyKind::power:
            os << "t^" << as_power()->p;
            break;
        case FamilyKind::zygmund:
            os << "t^" << as_zygmund()->p << " log^" << as_zygmund()->alpha << "(e+t)";
            break;
        case FamilyKind::compose:
            os << "(" << as_compose()->outer.describe() << ")o(" << as_compose()->inner.describe() << ")";
            break;
        case FamilyKind::product:
            os << "(" << as_product()->left.describe() << ")*(" << as_product()->right.describe() << ")";
            break;
        case FamilyKind::sum:
            os << "(" << as_sum()->left.describe() << ")+(" << as_sum()->right.describe() << ")";
            break;
        case FamilyKind::scale:
            os << as_scale()->c << "*(" << as_scale()->inner.describe() << ")";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Checked evaluation

inline double eval_G(const NFunc& f, double t) {
    if (!std::isfinite(t) || t < 0) throw DomainError("eval_G: t must be finite and >= 0");
    return f.value(t);
}

inline double eval_g(const NFunc& f, double t) {
    if (!std::isfinite(t) || !(t > 0)) throw DomainError("eval_g: t must be finite and > 0");
    return f.slope(t);
}

// ---------------------------------------------------------------------------
// Indices i_G = inf t g(t)/G(t), s_G = sup t g(t)/G(t)

struct GridSpec {
    double t_min = 1e-8;
    double t_max = 1e8;
    std::size_t n = 2048;
    // Extra samples at t_min / 10^(step k) and t_max * 10^(step k),
    // k = 1..extension_count, kept only where G stays finite and normal.
    int extension_count = 8;
    double extension_decades = 4.0;
    int golden_iterations = 60;
};

enum class End { zero, infinity };

/// Ends of (0, inf) toward which an extreme value is approached.
struct LimitSet {
    bool at_zero = false;
    bool at_infinity = false;
    bool any() const { return at_zero || at_infinity; }
    bool operator==(const LimitSet&) const = default;
};

struct IndexExtreme {
    double value = 0;
    /// Finite argument when the extreme is attained inside the sampled range.
    std::optional<double> arg;
    LimitSet limits;
};

struct Indices {
    double i_G = 0;
    double s_G = 0;
    IndexExtreme inf;
    IndexExtreme sup;
    GridSpec grid;
    std::size_t samples = 0;
};

namespace detail {

struct IndexSample {
    double t;
    double h;
};

inline bool usable(double G) { return std::isfinite(G) && std::isnormal(G); }

// A tail counts as still moving toward the extreme if the outermost samples
// are strictly monotone in the optimizing direction and the outermost value
// sits within a small fraction of the sampled range from the extreme.
inline bool tail_approaches(const std::vector<IndexSample>& s, bool at_start, bool minimize,
                            double extreme, double range) {
    constexpr std::size_t kTail = 6;
    constexpr double kStrict = 1e-12;
    constexpr double kNear = 0.05;
    if (s.size() < kTail + 1 || !(range > kStrict * std::abs(extreme))) return false;
    for (std::size_t k = 0; k < kTail; ++k) {
        const std::size_t outer = at_start ? k : s.size() - 1 - k;
        const std::size_t inner = at_start ? k + 1 : s.size() - 2 - k;
        const double diff = s[outer].h - s[inner].h;
        const double need = kStrict * std::abs(s[inner].h);
        if (minimize ? !(diff < -need) : !(diff > need)) return false;
    }
    const double edge = at_start ? s.front().h : s.back().h;
    return std::abs(edge - extreme) <= kNear * range;
}

}  // namespace detail

/// Estimates i_G and s_G on a log grid with asymptotic extension samples and
/// golden-section refinement of the best interior cell. When the extreme sits
/// on the outermost sample (or the outer tail is still moving toward it) the
/// corresponding end is reported as a limit marker and the boundary sample
/// is taken as the estimate.
inline Indices compute_indices(const NFunc& f, const GridSpec& grid = {}) {
    auto h_of = [&](double t) { return t * f.slope(t) / f.value(t); };

    std::vector<detail::IndexSample> samples;
    samples.reserve(grid.n + 2 * static_cast<std::size_t>(grid.extension_count));
    for (int k = grid.extension_count; k >= 1; --k) {
        const double t = grid.t_min * std::pow(10.0, -grid.extension_decades * k);
        const double G = f.value(t);
        if (!detail::usable(G)) continue;
        const double h = h_of(t);
        if (std::isfinite(h)) samples.push_back({t, h});
    }
    for (double t : log_grid(grid.t_min, grid.t_max, grid.n)) {
        const double G = f.value(t);
        if (!(G > 0) || !std::isfinite(G))
            throw InvalidNFunction("G(t) is zero or non-finite at sampled t = " + std::to_string(t));
        const double h = h_of(t);
        if (!std::isfinite(h))
            throw InvalidNFunction("t g(t)/G(t) is not finite at t = " + std::to_string(t));
        samples.push_back({t, h});
    }
    for (int k = 1; k <= grid.extension_count; ++k) {
        const double t = grid.t_max * std::pow(10.0, grid.extension_decades * k);
        const double G = f.value(t);
        if (!detail::usable(G)) continue;
        const double h = h_of(t);
        if (std::isfinite(h)) samples.push_back({t, h});
    }

    std::size_t imin = 0;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].h < samples[imin].h) imin = i;
        if (samples[i].h > samples[imax].h) imax = i;
    }
    const double range = samples[imax].h - samples[imin].h;
    // t g / G constant up to rounding: nothing to refine and no limit to mark.
    const bool constant = range <= 64 * std::numeric_limits<double>::epsilon() * std::abs(samples[imin].h);

    auto resolve = [&](std::size_t idx, bool minimize) {
        IndexExtreme ext;
        ext.value = samples[idx].h;
        if (constant) {
            ext.arg = samples[idx].t;
            return ext;
        }
        const bool at_first = idx == 0;
        const bool at_last = idx + 1 == samples.size();
        if (!at_first && !at_last) {
            const double lo = std::log(samples[idx - 1].t);
            const double hi = std::log(samples[idx + 1].t);
            auto obj = [&](double lt) { return h_of(std::exp(lt)); };
            const auto r = minimize ? golden_section_min(obj, lo, hi, grid.golden_iterations)
                                    : golden_section_max(obj, lo, hi, grid.golden_iterations);
            if (std::isfinite(r.value) && (minimize ? r.value < ext.value : r.value > ext.value)) {
                ext.value = r.value;
                ext.arg = std::exp(r.x);
            } else {
                ext.arg = samples[idx].t;
            }
        }
        ext.limits.at_zero =
            at_first || detail::tail_approaches(samples, true, minimize, ext.value, range);
        ext.limits.at_infinity =
            at_last || detail::tail_approaches(samples, false, minimize, ext.value, range);
        if (ext.limits.any() && !at_first && !at_last) {
            // An open tail competes with an interior optimum only when the
            // interior value is not strictly better than the edge.
            const double edge_lo = samples.front().h;
            const double edge_hi = samples.back().h;
            auto beats = [&](double interior, double edge) {
                return minimize ? interior < edge : interior > edge;
            };
            if (ext.limits.at_zero && beats(ext.value, edge_lo)) ext.limits.at_zero = false;
            if (ext.limits.at_infinity && beats(ext.value, edge_hi)) ext.limits.at_infinity = false;
        }
        if (ext.limits.any()) ext.arg.reset();
        return ext;
    };

    Indices out;
    out.inf = resolve(imin, true);
    out.sup = resolve(imax, false);
    out.i_G = out.inf.value;
    out.s_G = out.sup.value;
    out.grid = grid;
    out.samples = samples.size();
    return out;
}

// ---------------------------------------------------------------------------
// Young conjugate

struct ConjugateOptions {
    double t_min = 1e-8;
    double t_max = 1e8;
    std::size_t n = 2048;
    int golden_iterations = 80;
};

/// Numeric Legendre transform sup_{t>0} (s t - G(t)).
inline double young_conjugate(const NFunc& f, double s, const ConjugateOptions& opt = {}) {
    if (!std::isfinite(s) || s < 0) throw DomainError("young_conjugate: s must be finite and >= 0");
    if (s == 0) return 0.0;
    const auto ts = log_grid(opt.t_min, opt.t_max, opt.n);
    auto phi = [&](double t) { return s * t - f.value(t); };
    std::size_t best = 0;
    double best_v = phi(ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double v = phi(ts[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    if (best == 0 || best + 1 == ts.size()) {
        std::ostringstream os;
        os.precision(6);
        os << "young_conjugate: maximizer of s*t - G(t) for s = " << s << " lies at the search bound t = "
           << ts[best] << " (range [" << opt.t_min << ", " << opt.t_max << "])";
        throw RangeExceeded(os.str());
    }
    const auto r = golden_section_max([&](double lt) { return phi(std::exp(lt)); },
                                      std::log(ts[best - 1]), std::log(ts[best + 1]),
                                      opt.golden_iterations);
    return std::max(best_v, r.value);
}

/// Generalized inverse of the non-decreasing slope: smallest t with g(t) >= sigma.
inline double slope_inverse(const NFunc& f, double sigma) {
    if (!(sigma > 0)) return 0.0;
    double hi = 1.0;
    for (int k = 0; k < 4096 && !(f.slope(hi) >= sigma); ++k) {
        hi *= 2;
        if (!std::isfinite(hi)) throw RangeExceeded("slope_inverse: g never reaches the requested level");
    }
    double lo = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double mid = lo + (hi - lo) / 2;
        if (!(mid > lo && mid < hi)) break;
        if (f.slope(mid) >= sigma)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// Conjugate via the integral form: int_0^s g^{-1}(sigma) d sigma.
inline double young_conjugate_integral(const NFunc& f, double s, double rel_tol = 1e-10) {
    if (!std::isfinite(s) || s < 0) throw DomainError("young_conjugate_integral: s must be finite and >= 0");
    if (s == 0) return 0.0;
    const auto q = adaptive_simpson<double>([&](double u) { return slope_inverse(f, u); }, 0.0, s,
                                            rel_tol, 0.0, 40);
    return q.value;
}

// ---------------------------------------------------------------------------
// Delta_2 / nabla_2

struct Delta2Report {
    bool in_both = false;
    Indices via_indices;
    double doubling_ratio = 0;            // max G(2t)/G(t) over the grid
    double conjugate_doubling_ratio = 0;  // max conj(2s)/conj(s) over sampled s
    std::size_t conjugate_samples = 0;
};

inline Delta2Report check_delta2_nabla2(const NFunc& f, const GridSpec& grid = {}) {
    Delta2Report rep;
    rep.via_indices = compute_indices(f, grid);
    for (double t : log_grid(grid.t_min, grid.t_max / 2, 512)) {
        const double r = f.value(2 * t) / f.value(t);
        if (std::isfinite(r)) rep.doubling_ratio = std::max(rep.doubling_ratio, r);
    }
    for (double t : log_grid(1e-4, 1e4, 129)) {
        const double s = f.slope(t);
        try {
            const double r = young_conjugate(f, 2 * s) / young_conjugate(f, s);
            if (std::isfinite(r)) {
                rep.conjugate_doubling_ratio = std::max(rep.conjugate_doubling_ratio, r);
                ++rep.conjugate_samples;
            }
        } catch (const RangeExceeded&) {
        }
    }
    constexpr double kStrictlyAboveOne = 1e-9;
    rep.in_both = rep.via_indices.i_G > 1 + kStrictlyAboveOne && std::isfinite(rep.via_indices.s_G) &&
                  std::isfinite(rep.doubling_ratio) && rep.conjugate_samples > 0 &&
                  std::isfinite(rep.conjugate_doubling_ratio);
    return rep;
}

// ---------------------------------------------------------------------------
// Shifted N-function G_a(t) = int_0^t g(a+s) s / (a+s) ds

class ShiftedNFunc {
public:
    ShiftedNFunc(NFunc base, double a) : base_(std::move(base)), a_(a) {
        if (!(std::isfinite(a) && a > 0)) throw DomainError("shifted N-function needs finite a > 0");
    }
    const NFunc& base() const { return base_; }
    double shift() const { return a_; }

    /// g_a(s) = g(a+s) s / (a+s)
    template <class Real = double>
    Real slope(Real s) const {
        const Real as = Real(a_) + s;
        return base_.slope<Real>(as) * s / as;
    }

private:
    NFunc base_;
    double a_;
};

struct ShiftedTolerance {
    double rel = 1e-10;
    double abs = 1e-10;  // relative to the bound t * g_a(t) on the integral
    int max_depth = 48;
};

template <class Real = double>
Real eval_shifted(const ShiftedNFunc& sf, Real t, const ShiftedTolerance& tol = {}) {
    if (!std::isfinite(static_cast<double>(t)) || t < 0)
        throw DomainError("eval_shifted: t must be finite and >= 0");
    if (t == Real(0)) return Real(0);
    const Real bound = t * sf.slope<Real>(t);
    const auto q = adaptive_simpson<Real>([&](Real s) { return sf.slope<Real>(s); }, Real(0), t,
                                          Real(tol.rel), Real(tol.abs) * bound, tol.max_depth);
    if (!q.converged || !std::isfinite(static_cast<double>(q.value)))
        throw NumericError("eval_shifted: quadrature did not converge", static_cast<double>(q.value));
    return q.value;
}

}  // namespace monolab
