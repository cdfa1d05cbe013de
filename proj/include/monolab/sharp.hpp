#pragma once

// Infimum / supremum of quantity ratios over a reduced pair domain.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "monolab/errors.hpp"
#include "monolab/optimize.hpp"
#include "monolab/pairspace.hpp"
#include "monolab/parallel.hpp"

namespace monolab {

struct AxisRange {
    double lo = 1e-4;
    double hi = 1e4;
    std::size_t n = 96;
    bool operator==(const AxisRange&) const = default;
};

struct SearchDomain {
    AxisRange r;
    AxisRange s;
    /// Chebyshev nodes on [-1, 1]; -1, 0 and 1 are always added exactly.
    std::size_t n_lambda = 65;
    /// Fix max(r, s) = 1 and sweep the ratio min/max over [ratio_min, 1].
    bool scale_invariant = false;
    double ratio_min = 1e-8;
    std::size_t n_ratio = 96;
    /// Also sample the zero-norm points (r, 0) and (0, s).
    bool include_axes = true;

    bool operator==(const SearchDomain&) const = default;

    void validate() const {
        auto check = [](const AxisRange& a, const char* name) {
            if (!(std::isfinite(a.lo) && std::isfinite(a.hi) && a.lo > 0 && a.lo <= a.hi))
                throw DomainError(std::string("SearchDomain: ") + name + " range needs 0 < lo <= hi");
            if (a.n < 1 || (a.n == 1 && a.lo != a.hi))
                throw DomainError(std::string("SearchDomain: ") + name + " needs at least 2 points");
        };
        if (scale_invariant) {
            if (!(ratio_min > 0 && ratio_min < 1)) throw DomainError("SearchDomain: ratio_min must lie in (0, 1)");
            if (n_ratio < 2) throw DomainError("SearchDomain: n_ratio must be >= 2");
        } else {
            check(r, "r");
            check(s, "s");
        }
    }

    std::vector<double> lambda_grid() const {
        std::vector<double> v{-1.0, 0.0, 1.0};
        const std::size_t n = n_lambda;
        for (std::size_t k = 0; k < n; ++k) {
            if (n % 2 == 1 && k == (n - 1) / 2) continue;  // cos(pi/2), kept as an exact 0
            v.push_back(std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(n))));
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }
};

/// Index-addressable enumeration of the domain's sample points. Order:
/// lambda ascending (outer), then r, then s; zero-norm points come last.
class DomainGrid {
public:
    explicit DomainGrid(const SearchDomain& dom) : dom_(dom) {
        dom.validate();
        lam_ = dom.lambda_grid();
        if (dom.scale_invariant) {
            rho_ = log_grid(dom.ratio_min, 1.0, dom.n_ratio);
            per_lambda_ = 2 * rho_.size() - 1;
            axes_ = dom.include_axes ? 2 : 0;
        } else {
            rs_ = log_grid(dom.r.lo, dom.r.hi, dom.r.n);
            ss_ = log_grid(dom.s.lo, dom.s.hi, dom.s.n);
            per_lambda_ = rs_.size() * ss_.size();
            axes_ = dom.include_axes ? rs_.size() + ss_.size() : 0;
        }
        main_ = per_lambda_ * lam_.size();
    }

    std::size_t size() const { return main_ + axes_; }
    bool is_axis(std::size_t i) const { return i >= main_; }
    const SearchDomain& domain() const { return dom_; }
    const std::vector<double>& lambdas() const { return lam_; }

    PairPoint point(std::size_t i) const {
        if (i >= main_) {
            const std::size_t k = i - main_;
            if (dom_.scale_invariant) return k == 0 ? PairPoint::make(1, 0, 1) : PairPoint::make(0, 1, 1);
            return k < rs_.size() ? PairPoint::make(rs_[k], 0, 1) : PairPoint::make(0, ss_[k - rs_.size()], 1);
        }
        const double lam = lam_[i / per_lambda_];
        const std::size_t k = i % per_lambda_;
        if (dom_.scale_invariant) {
            if (k < rho_.size()) return PairPoint::make(1, rho_[k], lam);
            return PairPoint::make(rho_[k - rho_.size()], 1, lam);
        }
        return PairPoint::make(rs_[k / ss_.size()], ss_[k % ss_.size()], lam);
    }

private:
    SearchDomain dom_;
    std::vector<double> lam_, rs_, ss_, rho_;
    std::size_t per_lambda_ = 0;
    std::size_t main_ = 0;
    std::size_t axes_ = 0;
};

struct SkipCounts {
    std::size_t inadmissible = 0;
    std::size_t degenerate = 0;
    std::size_t small_denominator = 0;
    std::size_t total() const { return inadmissible + degenerate + small_denominator; }
};

struct RatioBound {
    double inf_est = 0;
    double sup_est = 0;
    PairPoint arg_inf;
    PairPoint arg_sup;
    bool refined = false;
    std::size_t n_evals = 0;
    /// Grid-only values before refinement.
    double grid_inf = 0;
    double grid_sup = 0;
    /// Ratio at the arg points recomputed in long double.
    double inf_extended = 0;
    double sup_extended = 0;
    SkipCounts skipped;
};

struct SweepOptions {
    bool refine = true;
    unsigned threads = 0;  // 0: resolve_threads()
    int restarts = 8;
    int iterations = 500;
    double tie_rel = 1e-12;
    double lambda_step = 0.1;
};

inline constexpr double kDenominatorFloor = 1e-300;
inline constexpr double kDegenerateRel = 1e-12;

enum class SkipReason : std::uint8_t { none, inadmissible, degenerate, small_denominator };

struct RatioSample {
    double value;
    SkipReason skip;
};

inline std::string describe_point(const PairPoint& pt) {
    std::ostringstream os;
    os.precision(17);
    os << "(r=" << pt.r() << ", s=" << pt.s() << ", lambda=" << pt.lambda() << ")";
    return os.str();
}

inline bool degenerate_point(const PairPoint& pt) {
    return diff_norm(pt) < kDegenerateRel * std::max(pt.r(), pt.s());
}

/// num/den at one point with the skip rules applied.
inline RatioSample ratio_at(const QuantityId& num, const QuantityId& den, const PairPoint& pt) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (!admissible(num, pt) || !admissible(den, pt)) return {nan, SkipReason::inadmissible};
    if (degenerate_point(pt)) return {nan, SkipReason::degenerate};
    const double dv = evaluate(den, pt);
    if (std::isnan(dv)) throw NumericError("denominator " + quantity_name(den) + " is NaN at " + describe_point(pt));
    if (!(dv > kDenominatorFloor)) return {nan, SkipReason::small_denominator};
    const double nv = evaluate(num, pt);
    const double q = nv / dv;
    if (std::isnan(q)) throw NumericError("ratio " + quantity_name(num) + " / " + quantity_name(den) + " is NaN at " + describe_point(pt));
    return {q, SkipReason::none};
}

namespace detail {

struct Pick {
    double value;
    std::size_t index;
};

/// Extreme of the non-skipped samples; among values within tie_rel of it the
/// lowest index wins.
inline std::optional<Pick> pick_extreme(const std::vector<RatioSample>& v, bool minimize, double tie_rel) {
    std::optional<double> best;
    for (const auto& x : v) {
        if (x.skip != SkipReason::none) continue;
        if (!best || (minimize ? x.value < *best : x.value > *best)) best = x.value;
    }
    if (!best) return std::nullopt;
    const double b = *best;
    const double slack = std::isfinite(b) ? tie_rel * std::abs(b) : 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].skip != SkipReason::none) continue;
        const double x = v[i].value;
        const bool within = std::isfinite(b) ? (minimize ? x <= b + slack : x >= b - slack) : x == b;
        if (within) return Pick{x, i};
    }
    return std::nullopt;
}

/// Indices of the k best non-axis samples, ordered by (value, index).
inline std::vector<std::size_t> best_seeds(const std::vector<RatioSample>& v, const DomainGrid& grid, bool minimize,
                                           std::size_t k) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].skip == SkipReason::none && !grid.is_axis(i) && std::isfinite(v[i].value)) idx.push_back(i);
    auto less = [&](std::size_t a, std::size_t b) {
        const double va = minimize ? v[a].value : -v[a].value;
        const double vb = minimize ? v[b].value : -v[b].value;
        return va < vb || (va == vb && a < b);
    };
    const std::size_t m = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(), less);
    idx.resize(m);
    return idx;
}

struct Refined {
    double value;
    PairPoint pt;
    std::size_t evals;
};

/// Nelder-Mead restarts; returns the best strict improvement over `current`.
template <class RatioFn>
std::optional<Refined> refine(RatioFn&& ratio, const std::vector<PairPoint>& seeds, const DomainGrid& grid,
                              bool minimize, double current, const SweepOptions& opt, std::size_t& evals) {
    const SearchDomain& dom = grid.domain();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    auto objective = [&](const PairPoint& pt) {
        ++evals;
        try {
            const auto q = ratio(pt);
            if (q.skip != SkipReason::none) return kInf;
            return minimize ? q.value : -q.value;
        } catch (const NumericError&) {
            return kInf;
        } catch (const DomainError&) {
            return kInf;
        }
    };
    std::optional<Refined> best;
    double best_obj = minimize ? current : -current;
    auto improves = [&](double obj) {
        if (!std::isfinite(best_obj)) return obj < best_obj;
        return obj < best_obj - opt.tie_rel * std::abs(best_obj);
    };
    for (const auto& seed : seeds) {
        PairPoint found;
        double obj;
        if (dom.scale_invariant) {
            const bool r_fixed = seed.r() == 1.0;
            auto make = [&](const std::array<double, 2>& x) {
                const double rho = std::exp(x[0]);
                return r_fixed ? PairPoint::make(1, rho, x[1]) : PairPoint::make(rho, 1, x[1]);
            };
            const double step = std::log(1.0 / dom.ratio_min) / static_cast<double>(dom.n_ratio - 1);
            BoxBounds<2> box{{std::log(dom.ratio_min), -1.0}, {0.0, 1.0}};
            const std::array<double, 2> x0{std::log(r_fixed ? seed.s() : seed.r()), seed.lambda()};
            const auto res = nelder_mead<2>([&](const std::array<double, 2>& x) { return objective(make(x)); }, x0,
                                            {step, opt.lambda_step}, box, opt.iterations);
            found = make(res.x);
            obj = res.value;
        } else {
            auto make = [&](const std::array<double, 3>& x) {
                return PairPoint::make(std::exp(x[0]), std::exp(x[1]), x[2]);
            };
            auto lstep = [](const AxisRange& a) {
                return a.n > 1 ? std::log(a.hi / a.lo) / static_cast<double>(a.n - 1) : 0.1;
            };
            BoxBounds<3> box{{std::log(dom.r.lo), std::log(dom.s.lo), -1.0},
                             {std::log(dom.r.hi), std::log(dom.s.hi), 1.0}};
            const std::array<double, 3> x0{std::log(seed.r()), std::log(seed.s()), seed.lambda()};
            const auto res = nelder_mead<3>([&](const std::array<double, 3>& x) { return objective(make(x)); }, x0,
                                            {lstep(dom.r), lstep(dom.s), opt.lambda_step}, box, opt.iterations);
            found = make(res.x);
            obj = res.value;
        }
        if (improves(obj)) {
            const auto q = ratio(found);  // reproduces obj exactly: same point, same code path
            best = Refined{q.value, found, 0};
            best_obj = obj;
        }
    }
    return best;
}

template <class RatioFn, class ExtFn>
RatioBound finish(const std::vector<RatioSample>& samples, const DomainGrid& grid, RatioFn&& ratio, ExtFn&& ext,
                  const SweepOptions& opt) {
    RatioBound rb;
    for (const auto& x : samples) {
        switch (x.skip) {
            case SkipReason::inadmissible: ++rb.skipped.inadmissible; break;
            case SkipReason::degenerate: ++rb.skipped.degenerate; break;
            case SkipReason::small_denominator: ++rb.skipped.small_denominator; break;
            case SkipReason::none: break;
        }
    }
    rb.n_evals = samples.size();
    const auto lo = pick_extreme(samples, true, opt.tie_rel);
    const auto hi = pick_extreme(samples, false, opt.tie_rel);
    if (!lo || !hi) throw DomainError("ratio search: no admissible point in the domain");
    rb.inf_est = rb.grid_inf = lo->value;
    rb.sup_est = rb.grid_sup = hi->value;
    rb.arg_inf = grid.point(lo->index);
    rb.arg_sup = grid.point(hi->index);
    if (opt.refine) {
        rb.refined = true;
        for (const bool minimize : {true, false}) {
            std::vector<PairPoint> seeds;
            for (auto i : best_seeds(samples, grid, minimize, static_cast<std::size_t>(opt.restarts)))
                seeds.push_back(grid.point(i));
            std::size_t evals = 0;
            const auto r = refine(ratio, seeds, grid, minimize, minimize ? rb.inf_est : rb.sup_est, opt, evals);
            rb.n_evals += evals;
            if (r) {
                if (minimize) {
                    rb.inf_est = r->value;
                    rb.arg_inf = r->pt;
                } else {
                    rb.sup_est = r->value;
                    rb.arg_sup = r->pt;
                }
            }
        }
    }
    rb.inf_extended = ext(rb.arg_inf);
    rb.sup_extended = ext(rb.arg_sup);
    return rb;
}

inline double extended_ratio(const QuantityId& num, const QuantityId& den, const PairPoint& pt) {
    return static_cast<double>(evaluate_extended(num, pt) / evaluate_extended(den, pt));
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline RatioBound ratio_bounds(const QuantityId& num, const QuantityId& den, const SearchDomain& dom,
                               const SweepOptions& opt = {}) {
    const DomainGrid grid(dom);
    const auto samples = parallel_map<RatioSample>(grid.size(), resolve_threads(opt.threads),
                                                   [&](std::size_t i) { return ratio_at(num, den, grid.point(i)); });
    return detail::finish(
        samples, grid, [&](const PairPoint& pt) { return ratio_at(num, den, pt); },
        [&](const PairPoint& pt) { return detail::extended_ratio(num, den, pt); }, opt);
}

/// Bounds of an arbitrary sampled function fn(PairPoint) -> RatioSample.
template <class F>
RatioBound sample_bounds(F&& fn, const SearchDomain& dom, const SweepOptions& opt = {}) {
    const DomainGrid grid(dom);
    const auto samples =
        parallel_map<RatioSample>(grid.size(), resolve_threads(opt.threads), [&](std::size_t i) { return fn(grid.point(i)); });
    return detail::finish(samples, grid, fn, [&](const PairPoint& pt) { return fn(pt).value; }, opt);
}

inline RatioBound ratio_bounds(const QuantityId& num, const QuantityId& den, const SearchDomain& dom, bool refine) {
    SweepOptions opt;
    opt.refine = refine;
    return ratio_bounds(num, den, dom, opt);
}

struct BoundCheck {
    bool ok = false;
    double worst_ratio = 0;
    PairPoint worst_point;
    double constant = 0;
    std::size_t checked = 0;
};

inline constexpr double kBoundSlack = 1e-9;

/// num >= c den at every admissible grid point, up to relative slack 1e-9.
inline BoundCheck verify_lower_bound(const QuantityId& num, const QuantityId& den, double c, const SearchDomain& dom,
                                     unsigned threads = 0) {
    if (!(c > 0)) throw DomainError("verify_lower_bound: c must be > 0");
    SweepOptions opt;
    opt.refine = false;
    opt.threads = threads;
    const auto rb = ratio_bounds(num, den, dom, opt);
    BoundCheck out;
    out.constant = c;
    out.worst_ratio = rb.inf_est;
    out.worst_point = rb.arg_inf;
    out.ok = rb.inf_est >= c * (1 - kBoundSlack);
    out.checked = rb.n_evals - rb.skipped.total();
    return out;
}

/// num <= c den at every admissible grid point, up to relative slack 1e-9.
inline BoundCheck verify_upper_bound(const QuantityId& num, const QuantityId& den, double c, const SearchDomain& dom,
                                     unsigned threads = 0) {
    if (!(c > 0)) throw DomainError("verify_upper_bound: c must be > 0");
    SweepOptions opt;
    opt.refine = false;
    opt.threads = threads;
    const auto rb = ratio_bounds(num, den, dom, opt);
    BoundCheck out;
    out.constant = c;
    out.worst_ratio = rb.sup_est;
    out.worst_point = rb.arg_sup;
    out.ok = rb.sup_est <= c * (1 + kBoundSlack);
    out.checked = rb.n_evals - rb.skipped.total();
    return out;
}

// ---------------------------------------------------------------------------
// Sharp-constant tables

enum class SharpClaim { PSmallLower, PSmallUpper, PLargeLower, VpLower };

inline const char* sharp_claim_name(SharpClaim c) {
    switch (c) {
        case SharpClaim::PSmallLower: return "p-small-lower";
        case SharpClaim::PSmallUpper: return "p-small-upper";
        case SharpClaim::PLargeLower: return "p-large-lower";
        case SharpClaim::VpLower: return "vp-lower";
    }
    return "?";
}

inline std::optional<SharpClaim> parse_sharp_claim(const std::string& s) {
    for (auto c : {SharpClaim::PSmallLower, SharpClaim::PSmallUpper, SharpClaim::PLargeLower, SharpClaim::VpLower})
        if (s == sharp_claim_name(c)) return c;
    return std::nullopt;
}

/// True when the reference is an exact optimum, false when it is only a valid bound.
inline bool sharp_reference_is_exact(SharpClaim c) {
    return c == SharpClaim::PSmallLower || c == SharpClaim::PLargeLower;
}

inline std::string sharp_claim_range(SharpClaim c) {
    return (c == SharpClaim::PSmallLower || c == SharpClaim::PSmallUpper) ? "1 < p <= 2" : "p >= 2";
}

inline bool sharp_claim_accepts(SharpClaim c, double p) {
    if (!std::isfinite(p)) return false;
    if (c == SharpClaim::PSmallLower || c == SharpClaim::PSmallUpper) return p > 1 && p <= 2;
    return p >= 2;
}

/// Upper constant for J_p <= c |xi - eta|^p, 1 < p <= 2, as produced by the
/// triangle-inequality argument.
inline double p_small_upper_bound(double p) {
    return std::max(std::pow(2.0, 2 - p) * (1 + (2 - p) * std::pow(3.0, p - 1)), std::pow(2.0, 3 - p));
}

inline double sharp_reference(SharpClaim c, double p) {
    switch (c) {
        case SharpClaim::PSmallLower: return p == 2 ? 2.0 : std::min(1.0, 2 * (p - 1));
        case SharpClaim::PSmallUpper: return p_small_upper_bound(p);
        case SharpClaim::PLargeLower: return std::pow(2.0, 2 - p);
        case SharpClaim::VpLower: return 4 / (p * p);
    }
    return 0;
}

struct SharpPair {
    QuantityId num;
    QuantityId den;
    bool lower;  // infimum (true) or supremum (false) is the constant
};

inline SharpPair sharp_pair(SharpClaim c, double p) {
    using namespace quantity;
    switch (c) {
        case SharpClaim::PSmallLower: return {Jp{p}, RhsPowerForm{p, PowerShape::inv_sum_pow}, true};
        case SharpClaim::PSmallUpper: return {Jp{p}, SumNorm{p}, false};
        case SharpClaim::PLargeLower: return {Jp{p}, SumNorm{p}, true};
        case SharpClaim::VpLower: return {Jp{p}, VpDiffSq{p}, true};
    }
    throw DomainError("unknown sharp claim");
}

struct SharpRow {
    double p = 0;
    double estimated = 0;
    double reference = 0;
    double deviation = 0;  // estimated / reference - 1
    bool exact_reference = true;
    bool lower = true;
    bool flagged = false;
    RatioBound bound;
};

inline constexpr double kSharpTolerance = 0.02;

inline std::vector<SharpRow> sharp_constant_sweep(SharpClaim claim, const std::vector<double>& p_grid,
                                                  const SearchDomain& dom, const SweepOptions& opt = {}) {
    for (double p : p_grid)
        if (!sharp_claim_accepts(claim, p)) {
            std::ostringstream os;
            os << "sharp claim " << sharp_claim_name(claim) << " needs " << sharp_claim_range(claim) << ", got p = " << p;
            throw DomainError(os.str());
        }
    std::vector<SharpRow> rows;
    for (double p : p_grid) {
        const auto pair = sharp_pair(claim, p);
        SharpRow row;
        row.p = p;
        row.bound = ratio_bounds(pair.num, pair.den, dom, opt);
        row.estimated = pair.lower ? row.bound.inf_est : row.bound.sup_est;
        row.reference = sharp_reference(claim, p);
        row.deviation = row.estimated / row.reference - 1;
        row.exact_reference = sharp_reference_is_exact(claim);
        row.lower = pair.lower;
        if (row.exact_reference)
            row.flagged = std::abs(row.deviation) > kSharpTolerance;
        else
            row.flagged = pair.lower ? row.deviation < -kBoundSlack : row.deviation > kBoundSlack;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Probe along xi = c eta or eta = c xi

enum class ProbePath { xi_eq_c_eta, eta_eq_c_xi };

struct ProbeRow {
    double c = 0;
    double num = 0;
    double den = 0;
    double ratio = 0;
    bool zero_numerator = false;
};

inline std::vector<double> default_probe_cs() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

inline PairPoint probe_point(ProbePath path, double c) {
    if (!(c > 0 && c <= 1)) throw DomainError("probe: c must lie in (0, 1]");
    return path == ProbePath::xi_eq_c_eta ? PairPoint::make(c, 1, 1) : PairPoint::make(1, c, 1);
}

inline std::vector<ProbeRow> unboundedness_probe(const QuantityId& num, const QuantityId& den, ProbePath path,
                                                 const std::vector<double>& cs = default_probe_cs()) {
    std::vector<ProbeRow> rows;
    for (double c : cs) {
        const auto pt = probe_point(path, c);
        ProbeRow row;
        row.c = c;
        row.num = evaluate(num, pt);
        row.den = evaluate(den, pt);
        row.ratio = row.num / row.den;
        row.zero_numerator = row.num == 0;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// All directed ratios among a set of quantities, each evaluated once per point

struct PairwiseBound {
    std::size_t num;
    std::size_t den;
    RatioBound bound;
};

/// With both_orders = false only pairs num < den are reported; each bound
/// then carries both directions through inf_est and sup_est.
inline std::vector<PairwiseBound> equivalence_matrix(const std::vector<QuantityId>& qs, const SearchDomain& dom,
                                                     const SweepOptions& opt = {}, bool both_orders = true) {
    const DomainGrid grid(dom);
    const std::size_t k = qs.size();
    const std::size_t n = grid.size();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    // Row i: k values, NaN where the quantity is inadmissible; degenerate
    // points are marked by an all-NaN row plus the flag.
    std::vector<double> vals(n * k, nan);
    std::vector<std::uint8_t> degen(n, 0);
    parallel_chunks(n, resolve_threads(opt.threads), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const auto pt = grid.point(i);
            if (degenerate_point(pt)) {
                degen[i] = 1;
                continue;
            }
            for (std::size_t j = 0; j < k; ++j)
                if (admissible(qs[j], pt)) vals[i * k + j] = evaluate(qs[j], pt);
        }
    });
    std::vector<PairwiseBound> out;
    std::vector<RatioSample> samples(n);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b || (!both_orders && b < a)) continue;
            for (std::size_t i = 0; i < n; ++i) {
                const double nv = vals[i * k + a];
                const double dv = vals[i * k + b];
                if (degen[i]) {
                    samples[i] = {nan, SkipReason::degenerate};
                } else if (std::isnan(nv) || std::isnan(dv)) {
                    samples[i] = {nan, SkipReason::inadmissible};
                } else if (!(dv > kDenominatorFloor)) {
                    samples[i] = {nan, SkipReason::small_denominator};
                } else {
                    const double q = nv / dv;
                    if (std::isnan(q))
                        throw NumericError("ratio " + quantity_name(qs[a]) + " / " + quantity_name(qs[b]) +
                                           " is NaN at " + describe_point(grid.point(i)));
                    samples[i] = {q, SkipReason::none};
                }
            }
            auto rb = detail::finish(
                samples, grid, [&](const PairPoint& pt) { return ratio_at(qs[a], qs[b], pt); },
                [&](const PairPoint& pt) { return detail::extended_ratio(qs[a], qs[b], pt); }, opt);
            out.push_back({a, b, rb});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV emission

namespace csv {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string ratio_header() {
    return "p_or_family,inf_est,sup_est,arg_inf_r,arg_inf_s,arg_inf_lambda,arg_sup_r,arg_sup_s,arg_sup_lambda,"
           "refined,n_evals";
}

inline std::string ratio_row(const std::string& label, const RatioBound& b) {
    std::string q = label;
    if (q.find_first_of(",\"") != std::string::npos) {
        std::string esc = "\"";
        for (char ch : q) {
            if (ch == '"') esc += '"';
            esc += ch;
        }
        q = esc + "\"";
    }
    return q + "," + num(b.inf_est) + "," + num(b.sup_est) + "," + num(b.arg_inf.r()) + "," + num(b.arg_inf.s()) +
           "," + num(b.arg_inf.lambda()) + "," + num(b.arg_sup.r()) + "," + num(b.arg_sup.s()) + "," +
           num(b.arg_sup.lambda()) + "," + (b.refined ? "true" : "false") + "," + std::to_string(b.n_evals);
}

inline std::string sharp_table(const std::vector<SharpRow>& rows) {
    std::string out = "p,estimated,reference,deviation,flagged,arg_r,arg_s,arg_lambda,n_evals\n";
    for (const auto& r : rows) {
        const PairPoint& a = r.lower ? r.bound.arg_inf : r.bound.arg_sup;
        out += num(r.p) + "," + num(r.estimated) + "," + num(r.reference) + "," + num(r.deviation) + "," +
               (r.flagged ? "true" : "false") + "," + num(a.r()) + "," + num(a.s()) + "," + num(a.lambda()) + "," +
               std::to_string(r.bound.n_evals) + "\n";
    }
    return out;
}

inline std::string probe_table(const std::vector<ProbeRow>& rows) {
    std::string out = "c,num,den,ratio,zero_numerator\n";
    for (const auto& r : rows)
        out += num(r.c) + "," + num(r.num) + "," + num(r.den) + "," + num(r.ratio) + "," +
               (r.zero_numerator ? "true" : "false") + "\n";
    return out;
}

}  // namespace csv

}  // namespace monolab
