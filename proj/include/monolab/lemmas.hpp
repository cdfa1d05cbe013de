#pragma once

// Registry of encoded claims and the runner that turns each into a report.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "monolab/errors.hpp"
#include "monolab/nfunc.hpp"
#include "monolab/pairspace.hpp"
#include "monolab/sharp.hpp"

namespace monolab {

enum class ClaimKind {
    ExactConstantInequality,
    TwoSidedEquivalence,
    SharpnessCheck,
    CounterexampleCheck,
    ScalarInequality,
    IdentityCheck,
};

enum class ClaimStatus { pass, fail, baseline_recorded, not_applicable };

inline const char* kind_name(ClaimKind k) {
    switch (k) {
        case ClaimKind::ExactConstantInequality: return "ExactConstantInequality";
        case ClaimKind::TwoSidedEquivalence: return "TwoSidedEquivalence";
        case ClaimKind::SharpnessCheck: return "SharpnessCheck";
        case ClaimKind::CounterexampleCheck: return "CounterexampleCheck";
        case ClaimKind::ScalarInequality: return "ScalarInequality";
        case ClaimKind::IdentityCheck: return "IdentityCheck";
    }
    return "?";
}

inline const char* status_name(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::pass: return "pass";
        case ClaimStatus::fail: return "fail";
        case ClaimStatus::baseline_recorded: return "baseline_recorded";
        case ClaimStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

struct ClaimReport {
    std::string claim_id;
    ClaimKind kind = ClaimKind::IdentityCheck;
    ClaimStatus status = ClaimStatus::pass;
    std::map<std::string, double> measured;
    std::vector<PairPoint> worst_points;
    double tolerance = 0;
    std::string detail;
    double elapsed_seconds = 0;
};

struct Claim;

/// Shared settings for every claim in one run.
struct RunContext {
    SearchDomain domain;
    unsigned threads = 0;
    std::uint64_t seed = 20240601;
    std::size_t identity_samples = 100000;
};

using ClaimRunner = std::function<void(const Claim&, const RunContext&, ClaimReport&)>;

struct Claim {
    std::string id;
    ClaimKind kind;
    std::string summary;
    std::vector<double> p_grid;     // power-growth claims
    std::vector<NFunc> families;    // general-growth claims
    double tolerance = 0;
    ClaimRunner runner;
};

/// Overrides applied to the registry defaults (from the command line).
struct RegistryOptions {
    std::optional<std::vector<double>> p_grid;
    std::optional<NFunc> family;
};

inline std::vector<double> default_small_p() { return {1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9}; }
inline std::vector<double> default_large_p() { return {2, 2.25, 2.5, 3, 3.5, 4, 6, 10}; }

/// Families for the scalar and index checks.
inline std::vector<NFunc> family_zoo() {
    return {
        NFunc::power(1.5),
        NFunc::power(3),
        NFunc::zygmund(2, 1),
        NFunc::zygmund(2, -0.5),
        NFunc::zygmund(1.5, -0.3),
        NFunc::scale(7, NFunc::power(3)),
        NFunc::compose(NFunc::power(2), NFunc::zygmund(1.5, 1)),
        NFunc::product(NFunc::power(1.2), NFunc::zygmund(1.5, 0.5)),
        NFunc::sum(NFunc::power(1.5), NFunc::power(3)),
    };
}

namespace claims {

using namespace quantity;

constexpr double kRelSlack = 1e-12;

inline bool le(double a, double b, double rel = kRelSlack) { return a <= b + rel * std::abs(b); }

inline void fail(ClaimReport& rep, const std::string& why) {
    rep.status = ClaimStatus::fail;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += why;
}

inline void note(ClaimReport& rep, const std::string& what) {
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += what;
}

inline std::string tag(const std::string& base, double p) { return base + "@p=" + csv::num(p); }
inline std::string tag(const std::string& base, const NFunc& f) { return base + "@" + f.describe(); }

inline SweepOptions sweep(const RunContext& ctx, bool refine) {
    SweepOptions o;
    o.refine = refine;
    o.threads = ctx.threads;
    return o;
}

/// Scalar evaluation points, as reduced pairs for reporting (s = 0).
inline PairPoint scalar_point(double t) { return PairPoint::make(t, 0, 1); }

inline std::vector<double> scalar_grid() { return log_grid(1e-8, 1e8, 2048); }

// -- family claims ---------------------------------------------------------

inline void run_sandwich(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        double worst = -std::numeric_limits<double>::infinity();
        double worst_t = 0;
        for (double t : scalar_grid()) {
            const double G = f.value(t);
            const double lo = t / 2 * f.slope(t / 2);
            const double hi = t * f.slope(t);
            // margin > 0 means violation
            const double m = std::max((lo - G) / G, (G - hi) / G);
            if (m > worst) {
                worst = m;
                worst_t = t;
            }
        }
        rep.measured[tag("worst_margin", f)] = worst;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(scalar_point(worst_t));
            fail(rep, "sandwich violated for " + f.describe() + " at t = " + csv::num(worst_t));
        }
    }
}

inline void run_indices_iff(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto d = check_delta2_nabla2(f);
        const double i = d.via_indices.i_G;
        const double s = d.via_indices.s_G;
        rep.measured[tag("i_G", f)] = i;
        rep.measured[tag("s_G", f)] = s;
        rep.measured[tag("doubling_ratio", f)] = d.doubling_ratio;
        rep.measured[tag("conjugate_doubling_ratio", f)] = d.conjugate_doubling_ratio;
        const bool by_indices = i > 1 && i <= s && std::isfinite(s);
        if (d.in_both != by_indices) fail(rep, "verdicts disagree for " + f.describe());
        if (!le(d.doubling_ratio, std::pow(2.0, s), 1e-9))
            fail(rep, "G(2t)/G(t) exceeds 2^s_G for " + f.describe());
        if (d.in_both && !le(d.conjugate_doubling_ratio, std::pow(2.0, i / (i - 1)), c.tolerance))
            fail(rep, "conjugate doubling exceeds 2^(i_G') for " + f.describe());
    }
}

inline void run_index_sandwich(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        double worst = -std::numeric_limits<double>::infinity();
        double worst_t = 0;
        for (double t : scalar_grid()) {
            const double G = f.value(t);
            const double h = t * f.slope(t);
            const double m = std::max((ix.i_G * G - h) / h, (h - ix.s_G * G) / h);
            if (m > worst) {
                worst = m;
                worst_t = t;
            }
        }
        rep.measured[tag("worst_margin", f)] = worst;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(scalar_point(worst_t));
            fail(rep, "index sandwich violated for " + f.describe() + " at t = " + csv::num(worst_t));
        }
    }
}

inline void run_index_monotone(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        const auto ts = scalar_grid();
        double worst = -std::numeric_limits<double>::infinity();
        double worst_t = 0;
        for (std::size_t k = 1; k < ts.size(); ++k) {
            const double a = ts[k - 1], b = ts[k];
            // G(b)/G(a) >= (b/a)^i_G and <= (b/a)^s_G
            const double q = f.value(b) / f.value(a);
            const double m = std::max(std::pow(b / a, ix.i_G) / q - 1, q / std::pow(b / a, ix.s_G) - 1);
            if (m > worst) {
                worst = m;
                worst_t = b;
            }
        }
        rep.measured[tag("worst_margin", f)] = worst;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(scalar_point(worst_t));
            fail(rep, "power comparison violated for " + f.describe() + " at t = " + csv::num(worst_t));
        }
    }
}

inline void run_comparability(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        const double C = ix.s_G * std::pow(2.0, ix.s_G - 1);
        double worst = 0;
        double worst_t = 0;
        for (double t : log_grid(1e-8, 1e8 / 2, 2048)) {
            const double v[4] = {f.slope(t), f.value(t) / t, f.value(2 * t) / (2 * t), f.slope(2 * t)};
            const double r = *std::max_element(v, v + 4) / *std::min_element(v, v + 4);
            if (r > worst) {
                worst = r;
                worst_t = t;
            }
        }
        rep.measured[tag("max_ratio", f)] = worst;
        rep.measured[tag("bound", f)] = C;
        if (!le(worst, C, c.tolerance)) {
            rep.worst_points.push_back(scalar_point(worst_t));
            fail(rep, "comparability band exceeded for " + f.describe());
        }
    }
}

inline void run_doubling(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        double worst_t = 0;
        bool bad = false;
        for (double t : log_grid(1e-8, 1e8 / 2, 2048)) {
            const double q = f.value(2 * t) / f.value(t);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            if (!le(std::pow(2.0, ix.i_G), q, c.tolerance) || !le(q, std::pow(2.0, ix.s_G), c.tolerance)) {
                bad = true;
                worst_t = t;
            }
        }
        rep.measured[tag("min_doubling", f)] = lo;
        rep.measured[tag("max_doubling", f)] = hi;
        if (bad) {
            rep.worst_points.push_back(scalar_point(worst_t));
            fail(rep, "doubling ratio outside [2^i_G, 2^s_G] for " + f.describe());
        }
    }
}

inline void run_int_form(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        double worst = 0, worst_t = 0;
        for (double t : log_grid(1e-6, 1e6, 49)) {
            const auto q = adaptive_simpson<double>([&](double u) { return f.slope(u); }, 0.0, t, 1e-12, 0.0, 60);
            const double e = std::abs(q.value - f.value(t)) / f.value(t);
            if (e > worst) {
                worst = e;
                worst_t = t;
            }
        }
        double worst_conj = 0, worst_s = 0;
        for (double t : log_grid(1e-2, 1e2, 9)) {
            const double s = f.slope(t);
            const double a = young_conjugate(f, s);
            const double b = young_conjugate_integral(f, s);
            const double e = std::abs(a - b) / a;
            if (e > worst_conj) {
                worst_conj = e;
                worst_s = s;
            }
        }
        rep.measured[tag("max_rel_err_G", f)] = worst;
        rep.measured[tag("max_rel_err_conjugate", f)] = worst_conj;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(scalar_point(worst_t));
            fail(rep, "G differs from the integral of g for " + f.describe());
        }
        if (worst_conj > 1e-6) {
            rep.worst_points.push_back(scalar_point(worst_s));
            fail(rep, "conjugate forms disagree for " + f.describe());
        }
    }
}

// -- power growth --------------------------------------------------------

inline std::vector<double> filtered(const std::vector<double>& ps, const std::function<bool(double)>& ok) {
    std::vector<double> v;
    for (double p : ps)
        if (ok(p)) v.push_back(p);
    return v;
}

inline bool mark_na_if_empty(const std::vector<double>& ps, ClaimReport& rep, const std::string& range) {
    if (!ps.empty()) return false;
    rep.status = ClaimStatus::not_applicable;
    note(rep, "no p in " + range);
    return true;
}

inline void run_p_small_lower(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 1 && p <= 2; });
    if (mark_na_if_empty(ps, rep, "(1, 2]")) return;
    const auto rows = sharp_constant_sweep(SharpClaim::PSmallLower, ps, ctx.domain, sweep(ctx, true));
    for (const auto& r : rows) {
        rep.measured[tag("estimated", r.p)] = r.estimated;
        rep.measured[tag("reference", r.p)] = r.reference;
        // The two candidate regimes for the optimum: eta = 0 and the
        // parallel limit s/r -> 1 at lambda = 1.
        const QuantityId num = Jp{r.p}, den = RhsPowerForm{r.p, PowerShape::inv_sum_pow};
        rep.measured[tag("regime_eta_zero", r.p)] = ratio_at(num, den, PairPoint::make(1, 0, 1)).value;
        rep.measured[tag("regime_parallel_limit", r.p)] = ratio_at(num, den, PairPoint::make(1, 1 - 1e-6, 1)).value;
        if (r.flagged) {
            rep.worst_points.push_back(r.bound.arg_inf);
            fail(rep, "constant off by " + csv::num(r.deviation) + " at p = " + csv::num(r.p));
        }
    }
}

template <class Body>
void for_each_p(const std::vector<double>& ps, Body&& body) {
    for (double p : ps) body(p);
}

inline void check_bound(ClaimReport& rep, const BoundCheck& b, double p, const std::string& what) {
    rep.measured[tag("worst_ratio", p)] = b.worst_ratio;
    rep.measured[tag("constant", p)] = b.constant;
    if (!b.ok) {
        rep.worst_points.push_back(b.worst_point);
        fail(rep, what + " fails at p = " + csv::num(p) + " (ratio " + csv::num(b.worst_ratio) + ")");
    }
}

inline void run_p_small_upper(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 1 && p <= 2; });
    if (mark_na_if_empty(ps, rep, "(1, 2]")) return;
    for_each_p(ps, [&](double p) {
        check_bound(rep, verify_upper_bound(Jp{p}, SumNorm{p}, p_small_upper_bound(p), ctx.domain, ctx.threads), p,
                    "J_p <= c2 |xi-eta|^p");
    });
}

inline void run_p_small_suff(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 1 && p <= 2; });
    if (mark_na_if_empty(ps, rep, "(1, 2]")) return;
    for_each_p(ps, [&](double p) {
        const double c2 = p_small_upper_bound(p);
        // | |xi|^{p-2} xi - |eta|^{p-2} eta |^2 = |V_{2p-2}(xi) - V_{2p-2}(eta)|^2
        check_bound(rep, verify_upper_bound(VpDiffSq{2 * p - 2}, SumNorm{2 * p - 2}, c2 * c2, ctx.domain, ctx.threads),
                    p, "flux Hoelder bound");
    });
}

inline void run_p_large_half(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p >= 2; });
    if (mark_na_if_empty(ps, rep, "[2, inf)")) return;
    for_each_p(ps, [&](double p) {
        check_bound(rep,
                    verify_lower_bound(Jp{p}, RhsPowerForm{p, PowerShape::sum_pow_weighted}, 0.5, ctx.domain, ctx.threads),
                    p, "J_p >= (1/2)(|xi|^{p-2}+|eta|^{p-2})|xi-eta|^2");
    });
}

inline void run_p_large_sharp(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p >= 2; });
    if (mark_na_if_empty(ps, rep, "[2, inf)")) return;
    const auto rows = sharp_constant_sweep(SharpClaim::PLargeLower, ps, ctx.domain, sweep(ctx, true));
    for (const auto& r : rows) {
        rep.measured[tag("estimated", r.p)] = r.estimated;
        rep.measured[tag("reference", r.p)] = r.reference;
        const auto& a = r.bound.arg_inf;
        rep.measured[tag("arg_inf_lambda", r.p)] = a.lambda();
        rep.measured[tag("arg_inf_ratio_gap", r.p)] = std::abs(a.r() - a.s()) / a.r();
        if (r.flagged || !(r.bound.inf_est >= r.reference * (1 - kBoundSlack))) {
            rep.worst_points.push_back(a);
            fail(rep, "constant off by " + csv::num(r.deviation) + " at p = " + csv::num(r.p));
        }
    }
}

inline void run_counterexample(const Claim& c, const RunContext&, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 2 && p < 3; });
    if (mark_na_if_empty(ps, rep, "(2, 3)")) return;
    for (double p : ps) {
        const auto pt = PairPoint::make(1, 0, 1);  // eta = 0
        const double lhs = 0.5 * evaluate(RhsPowerForm{p, PowerShape::sum_pow_weighted}, pt);
        const double rhs = std::pow(2.0, 2 - p) * evaluate(SumNorm{p}, pt);
        rep.measured[tag("violation_ratio", p)] = rhs / lhs;
        rep.worst_points.push_back(pt);
        if (!(rhs > lhs)) fail(rep, "no violation at eta = 0 for p = " + csv::num(p));
    }
}

inline void run_p_ge_3(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p >= 3; });
    if (mark_na_if_empty(ps, rep, "[3, inf)")) return;
    for_each_p(ps, [&](double p) {
        // (1/2) d^2 (r^{p-2} + s^{p-2}) >= 2^{2-p} d^p  <=>  ratio >= 2^{3-p}
        check_bound(rep,
                    verify_lower_bound(RhsPowerForm{p, PowerShape::sum_pow_weighted}, SumNorm{p}, std::pow(2.0, 3 - p),
                                       ctx.domain, ctx.threads),
                    p, "weighted form dominates 2^{2-p}|xi-eta|^p");
    });
}

/// Constants produced by the profile-derivative argument for the Vbar ratio.
inline std::pair<double, double> vbar_proof_band(double p) {
    if (p < 2) return {p * p / 4, std::max(4.0, std::pow(10.0, (2 - p) / 2))};
    return {std::min(1.0 / (36 * std::pow(2.0, (p - 6) / 2)), std::pow(5.0, (2 - p) / 2)),
            std::pow(2.0, (p - 6) / 2) * p * p};
}

inline void record_band(ClaimReport& rep, const std::string& key, const RatioBound& b) {
    rep.measured[key + ".inf"] = b.inf_est;
    rep.measured[key + ".sup"] = b.sup_est;
}

inline bool finite_positive(const RatioBound& b) {
    return std::isfinite(b.inf_est) && std::isfinite(b.sup_est) && b.inf_est > 0;
}

inline void run_vbar(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 0; });
    if (mark_na_if_empty(ps, rep, "(0, inf)")) return;
    for (double p : ps) {
        for (double mu : {0.0, 1.0}) {
            const auto b = ratio_bounds(VbarDiffSq{p, mu}, RhsPowerForm{p, PowerShape::shifted_quad, mu}, ctx.domain,
                                        sweep(ctx, true));
            const std::string key = tag("ratio", p) + ",mu=" + csv::num(mu);
            record_band(rep, key, b);
            const auto [lo, hi] = vbar_proof_band(p);
            if (!finite_positive(b)) {
                rep.worst_points.push_back(b.inf_est > 0 ? b.arg_sup : b.arg_inf);
                fail(rep, "degenerate bounds for " + key);
            } else if (b.inf_est < lo * (1 - kBoundSlack) || b.sup_est > hi * (1 + kBoundSlack)) {
                rep.worst_points.push_back(b.inf_est < lo ? b.arg_inf : b.arg_sup);
                fail(rep, "outside the proof band for " + key);
            }
        }
    }
}

/// Lower constant for J_p >= c (|xi|+|eta|)^{p-2}|xi-eta|^2 implied by the
/// elementary estimates.
inline double pow_approx_lower(double p) {
    if (p < 2) return std::min(1.0, 2 * (p - 1)) * std::pow(2.0, 1 - p);
    if (p < 3) return 0.5;
    return std::pow(2.0, 2 - p);
}

inline void run_pow_approx(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 1; });
    if (mark_na_if_empty(ps, rep, "(1, inf)")) return;
    for (double p : ps) {
        const auto b = ratio_bounds(Jp{p}, RhsPowerForm{p, PowerShape::sum_weighted}, ctx.domain, sweep(ctx, true));
        record_band(rep, tag("ratio", p), b);
        if (!finite_positive(b)) {
            rep.worst_points.push_back(b.arg_inf);
            fail(rep, "degenerate bounds at p = " + csv::num(p));
        } else if (b.inf_est < pow_approx_lower(p) * (1 - kBoundSlack)) {
            rep.worst_points.push_back(b.arg_inf);
            fail(rep, "lower constant below the elementary bound at p = " + csv::num(p));
        }
    }
}

inline void run_wrzesien(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 0; });
    if (mark_na_if_empty(ps, rep, "(0, inf)")) return;
    for (double p : ps) {
        const auto b = ratio_bounds(RhsPowerForm{p, PowerShape::quad_weighted}, RhsPowerForm{p, PowerShape::sum_weighted},
                                    ctx.domain, sweep(ctx, false));
        record_band(rep, tag("ratio", p), b);
        // ((r+s)/2 <= sqrt((r^2+s^2)/2) <= (r+s)/sqrt 2)^{p-2}, rearranged
        const double a = std::pow(0.5, (p - 2) / 2);
        const double lo = std::min(a, 1.0), hi = std::max(a, 1.0);
        if (b.inf_est < lo * (1 - c.tolerance) || b.sup_est > hi * (1 + c.tolerance)) {
            rep.worst_points.push_back(b.inf_est < lo ? b.arg_inf : b.arg_sup);
            fail(rep, "outside the norm comparison band at p = " + csv::num(p));
        }
    }
}

inline void run_p_le_1(const Claim&, const RunContext&, ClaimReport& rep) {
    const QuantityId den_half = RhsPowerForm{0.5, PowerShape::sum_weighted};
    const auto blow = unboundedness_probe(Jp{0.5}, den_half, ProbePath::xi_eq_c_eta, {1e-1, 1e-4});
    const double growth = blow[1].ratio / blow[0].ratio;
    rep.measured["growth_p=0.5"] = growth;
    if (!(growth > 10)) {
        rep.worst_points.push_back(probe_point(ProbePath::xi_eq_c_eta, 1e-4));
        fail(rep, "ratio does not blow up for p = 0.5");
    }
    const auto flat = unboundedness_probe(Jp{1}, RhsPowerForm{1, PowerShape::sum_weighted}, ProbePath::eta_eq_c_xi,
                                          {0.5, 1e-1, 1e-2, 1e-3});
    bool vanishes = true;
    for (const auto& r : flat) vanishes = vanishes && r.zero_numerator && r.den > 0;
    rep.measured["zero_numerator_rows_p=1"] = static_cast<double>(flat.size());
    if (!vanishes) {
        rep.worst_points.push_back(probe_point(ProbePath::eta_eq_c_xi, 0.5));
        fail(rep, "numerator does not vanish along eta = c xi for p = 1");
    }
}

inline void run_vp_equiv(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 1; });
    note(rep, "p = 1 untested");
    if (mark_na_if_empty(ps, rep, "(1, inf)")) return;
    for (double p : ps) {
        const auto b = ratio_bounds(Jp{p}, VpDiffSq{p}, ctx.domain, sweep(ctx, true));
        record_band(rep, tag("ratio", p), b);
        if (!finite_positive(b)) {
            rep.worst_points.push_back(b.arg_inf);
            fail(rep, "degenerate bounds at p = " + csv::num(p));
        } else if (p >= 2 && b.inf_est < 4 / (p * p) * (1 - kBoundSlack)) {
            rep.worst_points.push_back(b.arg_inf);
            fail(rep, "lower constant below 4/p^2 at p = " + csv::num(p));
        }
    }
}

inline void run_vp_lower(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p >= 2; });
    if (mark_na_if_empty(ps, rep, "[2, inf)")) return;
    for_each_p(ps, [&](double p) {
        check_bound(rep, verify_lower_bound(Jp{p}, VpDiffSq{p}, 4 / (p * p), ctx.domain, ctx.threads), p,
                    "J_p >= (4/p^2)|V_p(xi)-V_p(eta)|^2");
    });
}

inline void run_t_p(const Claim&, const RunContext&, ClaimReport& rep) {
    std::size_t violations = 0, checked = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
        const double p = 0.1 * i;
        for (double t : log_grid(1, 1e6, 100)) {
            ++checked;
            const double lhs = -std::expm1(-p * std::log(t));
            const double rhs = p * (t - 1);
            worst = std::max(worst, lhs - rhs);
            if (lhs > rhs) {
                ++violations;
                rep.worst_points.push_back(PairPoint::make(t, p, 1));
            }
        }
    }
    rep.measured["checked"] = static_cast<double>(checked);
    rep.measured["violations"] = static_cast<double>(violations);
    rep.measured["max_lhs_minus_rhs"] = worst;
    if (violations > 0) fail(rep, std::to_string(violations) + " violations (points stored as (t, p))");
}

// -- general growth ------------------------------------------------------

inline void run_pair_equiv(const Claim& c, const RunContext& ctx, ClaimReport& rep,
                           const std::function<std::pair<QuantityId, QuantityId>(const NFunc&)>& make) {
    for (const auto& f : c.families) {
        const auto [num, den] = make(f);
        const auto b = ratio_bounds(num, den, ctx.domain, sweep(ctx, true));
        record_band(rep, tag("ratio", f), b);
        rep.worst_points.push_back(b.arg_inf);
        rep.worst_points.push_back(b.arg_sup);
        if (!finite_positive(b)) fail(rep, "degenerate bounds for " + f.describe());
    }
    if (rep.status == ClaimStatus::pass) rep.status = ClaimStatus::baseline_recorded;
}

inline double rand_log(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline double rel_diff(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0 ? 0.0 : std::abs(a - b) / m;
}

inline void run_vg_identity(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        std::mt19937_64 rng(ctx.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0;
        PairPoint worst_pt;
        for (std::size_t k = 0; k < ctx.identity_samples; ++k) {
            const double r = rand_log(rng, 1e-4, 1e4);
            const double s = rand_log(rng, 1e-4, 1e4);
            const double w = u(rng);
            const double lam = w < 0.05 ? 1.0 : (w < 0.1 ? -1.0 : 2 * u(rng) - 1);
            const auto pt = PairPoint::make(r, s, lam);
            const double a = eval_V_diff_sq(vdiff::VG{f}, pt);
            // V_1 applied to the vectors G(|xi|) xi/|xi|, G(|eta|) eta/|eta|
            const double b = eval_V_diff_sq(vdiff::Vp{1}, PairPoint::make(f.value(r), f.value(s), lam));
            const double e = rel_diff(a, b);
            if (e > worst) {
                worst = e;
                worst_pt = pt;
            }
        }
        rep.measured[tag("max_rel_diff", f)] = worst;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(worst_pt);
            fail(rep, "V_G and V_1 forms differ for " + f.describe());
        }
    }
}

inline void run_vg_fin(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        // |G(r) xi/r - G(s) eta/s| / (G(r)/r |xi - eta|) for r >= s
        auto fn = [&](const PairPoint& pt) -> RatioSample {
            constexpr double nan = std::numeric_limits<double>::quiet_NaN();
            if (pt.r() < pt.s() || pt.s() == 0) return {nan, SkipReason::inadmissible};
            if (degenerate_point(pt)) return {nan, SkipReason::degenerate};
            const double num = std::sqrt(radial_diff_sq(f.value(pt.r()), f.value(pt.s()), pt.lambda()));
            const double den = f.value(pt.r()) / pt.r() * diff_norm(pt);
            if (!(den > kDenominatorFloor)) return {nan, SkipReason::small_denominator};
            return {num / den, SkipReason::none};
        };
        const auto b = sample_bounds(fn, ctx.domain, sweep(ctx, false));
        record_band(rep, tag("ratio", f), b);
        rep.worst_points.push_back(b.arg_inf);
        rep.worst_points.push_back(b.arg_sup);
        if (!finite_positive(b)) fail(rep, "degenerate bounds for " + f.describe());
    }
    if (rep.status == ClaimStatus::pass) rep.status = ClaimStatus::baseline_recorded;
}

inline void run_vg_est(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        const DomainGrid grid(ctx.domain);
        double worst = -std::numeric_limits<double>::infinity();
        PairPoint worst_pt;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto pt = grid.point(i);
            if (pt.lambda() != 1.0 || pt.s() == 0 || pt.r() < pt.s()) continue;  // scalar in (r, s)
            const double lhs = 1 - (f.value(pt.s()) / pt.s()) / (f.value(pt.r()) / pt.r());
            const double rhs = (ix.s_G - 1) * (pt.r() / pt.s() - 1);
            const double m = lhs - rhs;
            if (m > worst) {
                worst = m;
                worst_pt = pt;
            }
        }
        rep.measured[tag("max_lhs_minus_rhs", f)] = worst;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(worst_pt);
            fail(rep, "slope-ratio estimate violated for " + f.describe());
        }
    }
}

inline void run_lipiec2(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        const double C = std::max(2.0, ix.s_G - 1);
        auto fn = [&](const PairPoint& pt) -> RatioSample {
            constexpr double nan = std::numeric_limits<double>::quiet_NaN();
            if (pt.r() < pt.s() || pt.s() == 0) return {nan, SkipReason::inadmissible};
            if (degenerate_point(pt)) return {nan, SkipReason::degenerate};
            const double r = pt.r(), s = pt.s();
            const double kappa = (f.value(s) / (s * s)) / (f.value(r) / (r * r));
            const double num = std::sqrt(radial_diff_sq(r, kappa * s, pt.lambda()));
            return {num / diff_norm(pt), SkipReason::none};
        };
        const auto b = sample_bounds(fn, ctx.domain, sweep(ctx, false));
        rep.measured[tag("sup_ratio", f)] = b.sup_est;
        rep.measured[tag("constant", f)] = C;
        if (!(b.sup_est <= C * (1 + kBoundSlack))) {
            rep.worst_points.push_back(b.arg_sup);
            fail(rep, "ratio exceeds max(2, s_G - 1) for " + f.describe());
        }
    }
}

inline std::vector<QuantityId> chain_quantities(const NFunc& f) {
    return {VGDiffSq{f}, GShiftForm{f}, CalG{f}, GFracForm{f}, JG{f}};
}

inline void record_matrix(ClaimReport& rep, const std::string& prefix, const std::vector<QuantityId>& qs,
                          const std::vector<PairwiseBound>& m) {
    for (const auto& e : m) {
        const std::string key = prefix + ":" + quantity_name(qs[e.num]) + "/" + quantity_name(qs[e.den]);
        record_band(rep, key, e.bound);
        if (!finite_positive(e.bound)) {
            rep.worst_points.push_back(e.bound.inf_est > 0 ? e.bound.arg_sup : e.bound.arg_inf);
            fail(rep, "unbounded or vanishing ratio " + key);
        }
    }
}

inline void run_chain(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto qs = chain_quantities(f);
        const auto m = equivalence_matrix(qs, ctx.domain, sweep(ctx, true), false);
        record_matrix(rep, f.describe(), qs, m);
        rep.measured[tag("pairs", f)] = static_cast<double>(m.size());
    }
    if (rep.status == ClaimStatus::pass) rep.status = ClaimStatus::baseline_recorded;
}

inline void run_one_line(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const std::vector<QuantityId> qs{CalG{f}, GShiftForm{f}, GFracForm{f}};
        record_matrix(rep, f.describe(), qs, equivalence_matrix(qs, ctx.domain, sweep(ctx, true), false));
    }
    if (rep.status == ClaimStatus::pass) rep.status = ClaimStatus::baseline_recorded;
}

/// Two-branch function of (a, t): G(t) for t >= a, G(a) t^2 / a^2 below.
inline double calG_scalar(const NFunc& f, double a, double t) {
    return t >= a ? f.value(t) : f.value(a) / (a * a) * t * t;
}

template <class F>
RatioBound scalar_2d_bounds(F&& fn, std::size_t n = 96) {
    // (a, t) on a log grid mapped to PairPoint(a, t, 1) purely as a carrier
    SearchDomain d;
    d.n_lambda = 1;
    d.r = {1e-4, 1e4, n};
    d.s = {1e-4, 1e4, n};
    d.include_axes = false;
    SweepOptions o;
    o.refine = false;
    return sample_bounds(
        [&](const PairPoint& pt) -> RatioSample {
            if (pt.lambda() != 1.0) return {std::numeric_limits<double>::quiet_NaN(), SkipReason::inadmissible};
            return {fn(pt.r(), pt.s()), SkipReason::none};
        },
        d, o);
}

inline void run_Ga(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        // branch seam: d = |xi| exactly when lambda = s / (2 r)
        std::mt19937_64 rng(ctx.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0;
        PairPoint worst_pt;
        for (std::size_t k = 0; k < ctx.identity_samples; ++k) {
            const double r = rand_log(rng, 1e-4, 1e4);
            const double s = r * 2 * (1 - u(rng));
            const auto pt = PairPoint::make(r, s, s / (2 * r));
            const auto br = calG_branches(f, pt);
            const double e = rel_diff(br.far, br.near);
            if (e > worst) {
                worst = e;
                worst_pt = pt;
            }
        }
        rep.measured[tag("seam_max_rel_diff", f)] = worst;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(worst_pt);
            fail(rep, "branches disagree at the seam for " + f.describe());
        }
        const auto b = scalar_2d_bounds([&](double a, double t) {
            return eval_shifted(ShiftedNFunc(f, a), t) / calG_scalar(f, a, t);
        });
        record_band(rep, tag("G_a/calG", f), b);
        if (!finite_positive(b)) fail(rep, "G_a and the two-branch function are not comparable for " + f.describe());
    }
    if (rep.status == ClaimStatus::pass) rep.status = ClaimStatus::baseline_recorded;
}

inline void run_ga(const Claim& c, const RunContext&, ClaimReport& rep) {
    ShiftedTolerance tight;
    tight.rel = 1e-14;
    tight.abs = 1e-14;
    tight.max_depth = 60;
    for (const auto& f : c.families) {
        double worst = 0, worst_a = 0, worst_t = 0;
        for (double a : log_grid(1e-2, 1e2, 9)) {
            const ShiftedNFunc sf(f, a);
            for (double t : log_grid(1e-2, 1e2, 9)) {
                const double h = 1e-5 * t;
                const double fd = (eval_shifted(sf, t + h, tight) - eval_shifted(sf, t - h, tight)) / (2 * h);
                const double e = rel_diff(fd, sf.slope(t));
                if (e > worst) {
                    worst = e;
                    worst_a = a;
                    worst_t = t;
                }
            }
        }
        rep.measured[tag("max_rel_diff", f)] = worst;
        if (worst > c.tolerance) {
            rep.worst_points.push_back(PairPoint::make(worst_a, worst_t, 1));
            fail(rep, "derivative of G_a differs from g(a+t)t/(a+t) for " + f.describe() + " (points as (a, t))");
        }
    }
}

inline void run_equiv3(const Claim& c, const RunContext&, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto b1 = scalar_2d_bounds([&](double a, double t) {
            return (eval_shifted(ShiftedNFunc(f, a), t) / (t * t)) / (f.slope(a + t) / (a + t));
        });
        const auto b2 = scalar_2d_bounds([&](double a, double t) {
            return (f.slope(a + t) / (a + t)) / (f.value(a + t) / ((a + t) * (a + t)));
        });
        record_band(rep, tag("G_a(t)/t^2 : g(a+t)/(a+t)", f), b1);
        record_band(rep, tag("g(a+t)/(a+t) : G(a+t)/(a+t)^2", f), b2);
        if (!finite_positive(b1) || !finite_positive(b2)) fail(rep, "degenerate bounds for " + f.describe());
    }
    if (rep.status == ClaimStatus::pass) rep.status = ClaimStatus::baseline_recorded;
}

inline void run_coro_chain(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    const auto ps = filtered(c.p_grid, [](double p) { return p > 1; });
    if (mark_na_if_empty(ps, rep, "(1, inf)")) return;
    for (double p : ps) {
        const std::vector<QuantityId> qs{VpDiffSq{p}, RhsPowerForm{p, PowerShape::quad_weighted},
                                         RhsPowerForm{p, PowerShape::sum_weighted}, Jp{p}};
        record_matrix(rep, "p=" + csv::num(p), qs, equivalence_matrix(qs, ctx.domain, sweep(ctx, true), false));
        if (p == 2) {
            const auto b = ratio_bounds(Jp{p}, SumNorm{2}, ctx.domain, sweep(ctx, false));
            record_band(rep, "p=2:Jp/|xi-eta|^2", b);
            if (std::abs(b.inf_est - 1) > 1e-12 || std::abs(b.sup_est - 1) > 1e-12)
                fail(rep, "J_2 differs from |xi-eta|^2");
        }
        // consistency with the sharp constants on the related pairs
        const SharpClaim sc = p <= 2 ? SharpClaim::PSmallLower : SharpClaim::PLargeLower;
        const auto row = sharp_constant_sweep(sc, {p}, ctx.domain, sweep(ctx, true)).front();
        rep.measured[tag(std::string("sharp_") + sharp_claim_name(sc), p)] = row.estimated;
        if (row.flagged) {
            rep.worst_points.push_back(row.bound.arg_inf);
            fail(rep, "sharp constant inconsistent at p = " + csv::num(p));
        }
    }
}

inline void run_superquadratic(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    bool any = false;
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        rep.measured[tag("i_G", f)] = ix.i_G;
        if (ix.i_G < 2 * (1 - 1e-12)) {
            note(rep, f.describe() + " is not superquadratic");
            continue;
        }
        any = true;
        const auto b = ratio_bounds(GOfDiff{f}, JG{f}, ctx.domain, sweep(ctx, true));
        rep.measured[tag("sup G(d)/J_G", f)] = b.sup_est;
        rep.worst_points.push_back(b.arg_sup);
        if (!std::isfinite(b.sup_est)) fail(rep, "G(|xi-eta|)/J_G unbounded for " + f.describe());
    }
    if (!any) {
        rep.status = ClaimStatus::not_applicable;
        return;
    }
    if (rep.status == ClaimStatus::pass) rep.status = ClaimStatus::baseline_recorded;
}

inline void run_subquadratic(const Claim& c, const RunContext&, ClaimReport& rep) {
    bool any = false;
    for (const auto& f : c.families) {
        const auto ix = compute_indices(f);
        if (!(ix.i_G < 2 && ix.s_G < 2)) {
            note(rep, f.describe() + " is not strictly subquadratic");
            continue;
        }
        any = true;
        // eta -> xi along lambda = 1: G(d)/J_G grows like d^{-(2 - s_G)} at least
        const QuantityId num = GOfDiff{f}, den = JG{f};
        const double near = ratio_at(num, den, PairPoint::make(1, 1 - 1e-6, 1)).value;
        const double far = ratio_at(num, den, PairPoint::make(1, 1 - 1e-1, 1)).value;
        rep.measured[tag("growth", f)] = near / far;
        rep.worst_points.push_back(PairPoint::make(1, 1 - 1e-6, 1));
        if (!(near / far > 10)) fail(rep, "no blow-up of G(|xi-eta|)/J_G for " + f.describe());
    }
    if (!any) rep.status = ClaimStatus::not_applicable;
}

}  // namespace claims

/// Measured constants of the model map A(xi) = G(|xi|) xi / |xi|^2.
inline ClaimReport check_model_operator(const NFunc& f, const SearchDomain& dom, unsigned threads = 0) {
    ClaimReport rep;
    rep.claim_id = "opA-cond.model";
    rep.kind = ClaimKind::IdentityCheck;
    rep.tolerance = 1e-9;
    const auto ix = compute_indices(f);
    // (i) |A(xi)| = G(t)/t <= c1 g(t)
    double c1 = 0, c1_min = std::numeric_limits<double>::infinity(), c1_t = 0;
    for (double t : claims::scalar_grid()) {
        const double v = f.value(t) / (t * f.slope(t));
        if (v > c1) {
            c1 = v;
            c1_t = t;
        }
        c1_min = std::min(c1_min, v);
    }
    rep.measured["c1"] = c1;
    rep.measured["c1_bound"] = 1 / ix.i_G;
    if (!(c1 <= (1 / ix.i_G) * (1 + rep.tolerance) && c1_min >= (1 / ix.s_G) * (1 - rep.tolerance))) {
        rep.worst_points.push_back(claims::scalar_point(c1_t));
        claims::fail(rep, "|A(xi)|/g(|xi|) outside [1/s_G, 1/i_G]");
    }
    // (ii) <A(xi) - A(eta), xi - eta> >= c2 |V_G(xi) - V_G(eta)|^2
    SweepOptions o;
    o.threads = threads;
    const auto b = ratio_bounds(quantity::JG{f}, quantity::VGDiffSq{f}, dom, o);
    rep.measured["c2"] = b.inf_est;
    rep.worst_points.push_back(b.arg_inf);
    if (!(b.inf_est > 0)) claims::fail(rep, "no positive monotonicity constant");
    // (iii) eta = 0: <A(xi), xi> = G(|xi|), so c2 <= 1 is forced
    double c3 = std::numeric_limits<double>::infinity();
    for (double t : log_grid(dom.r.lo, dom.r.hi, dom.r.n))
        c3 = std::min(c3, eval_JG(f, PairPoint::make(t, 0, 1)) / f.value(t));
    rep.measured["c3"] = c3;
    if (!(b.inf_est <= c3 * (1 + rep.tolerance))) claims::fail(rep, "c2 exceeds the eta = 0 constant");
    return rep;
}

namespace claims {
inline void run_model(const Claim& c, const RunContext& ctx, ClaimReport& rep) {
    for (const auto& f : c.families) {
        const auto r = check_model_operator(f, ctx.domain, ctx.threads);
        for (const auto& [k, v] : r.measured) rep.measured[tag(k, f)] = v;
        for (const auto& p : r.worst_points) rep.worst_points.push_back(p);
        if (r.status == ClaimStatus::fail) fail(rep, f.describe() + ": " + r.detail);
    }
}
}  // namespace claims

/// The complete claim list with defaults, overridden by `opt`.
inline std::vector<Claim> registry(const RegistryOptions& opt = {}) {
    using K = ClaimKind;
    using namespace claims;
    const auto small = opt.p_grid.value_or(default_small_p());
    auto small_and_two = small;
    if (!opt.p_grid) small_and_two.push_back(2.0);
    const auto large = opt.p_grid.value_or(default_large_p());
    auto all_p = opt.p_grid.value_or([&] {
        auto v = default_small_p();
        for (double p : default_large_p()) v.push_back(p);
        return v;
    }());
    const auto vbar_p = opt.p_grid.value_or(std::vector<double>{0.5, 1, 1.5, 2, 3, 4});
    const auto zoo = opt.family ? std::vector<NFunc>{*opt.family} : family_zoo();
    const auto one = std::vector<NFunc>{opt.family.value_or(NFunc::zygmund(2, 1))};
    const auto sub = std::vector<NFunc>{opt.family.value_or(NFunc::power(1.5))};
    const std::vector<double> ce_p = opt.p_grid.value_or(std::vector<double>{2.25, 2.5, 2.75});
    const std::vector<double> ge3 = opt.p_grid.value_or(std::vector<double>{3, 3.5, 4, 6, 10});
    const std::vector<double> chain_p = opt.p_grid.value_or(std::vector<double>{1.5, 2, 3});

    std::vector<Claim> v{
        {"lem:1.sandwich", K::ScalarInequality, "(t/2) g(t/2) <= G(t) <= t g(t)", {}, zoo, 1e-12, run_sandwich},
        {"lem:iG-sG.indices", K::IdentityCheck, "Delta2 and nabla2 iff 1 < i_G <= s_G < inf", {}, zoo, 1e-6,
         run_indices_iff},
        {"lem:iG-sG.sandwich", K::ScalarInequality, "i_G G <= t g <= s_G G", {}, zoo, 1e-12, run_index_sandwich},
        {"lem:iG-sG.monotone", K::ScalarInequality, "G/t^i_G non-decreasing, G/t^s_G non-increasing", {}, zoo, 1e-12,
         run_index_monotone},
        {"cor:g-delta2.comparability", K::ScalarInequality, "g(t), G(t)/t, G(2t)/(2t), g(2t) comparable", {}, zoo,
         1e-12, run_comparability},
        {"cor:g-delta2.doubling", K::ScalarInequality, "2^i_G <= G(2t)/G(t) <= 2^s_G", {}, zoo, 1e-12, run_doubling},
        {"eq:G-int-form.identity", K::IdentityCheck, "G = int g and conjugate = int g^{-1}", {}, zoo, 1e-9,
         run_int_form},
        {"lem:p-male.lower", K::SharpnessCheck, "J_p >= c1 |xi-eta|^2/(|xi|^{2-p}+|eta|^{2-p}), sharp c1",
         small_and_two, {}, kSharpTolerance, run_p_small_lower},
        {"lem:p-male.upper", K::ExactConstantInequality, "J_p <= c2 |xi-eta|^p", small, {}, kBoundSlack,
         run_p_small_upper},
        {"lem:p-male.suff", K::ExactConstantInequality, "flux difference <= c2 |xi-eta|^{p-1}", small, {}, kBoundSlack,
         run_p_small_suff},
        {"lem:p>2.eq-p3", K::ExactConstantInequality, "J_p >= (1/2)|xi-eta|^2(|xi|^{p-2}+|eta|^{p-2})", large, {},
         kBoundSlack, run_p_large_half},
        {"lem:p>2.sharp", K::SharpnessCheck, "J_p >= 2^{2-p}|xi-eta|^p, sharp", large, {}, 0.01, run_p_large_sharp},
        {"rem:ce.counterexample", K::CounterexampleCheck, "weighted form below 2^{2-p}|xi|^p at eta = 0, 2 < p < 3",
         ce_p, {}, 0, run_counterexample},
        {"rem:ce.p_ge_3", K::ExactConstantInequality, "weighted form dominates 2^{2-p}|xi-eta|^p for p >= 3", ge3, {},
         kBoundSlack, run_p_ge_3},
        {"lem:Vp2.equiv", K::TwoSidedEquivalence, "|Vbar diff|^2/|xi-eta|^2 ~ (mu+|xi|^2+|eta|^2)^{(p-2)/2}", vbar_p,
         {}, kBoundSlack, run_vbar},
        {"lem:pow-approx.equiv", K::TwoSidedEquivalence, "J_p ~ (|xi|+|eta|)^{p-2}|xi-eta|^2", all_p, {}, kBoundSlack,
         run_pow_approx},
        {"lem:pow-approx.wrzesien0", K::IdentityCheck, "(|xi|^2+|eta|^2)^{(p-2)/2} ~ (|xi|+|eta|)^{p-2}", all_p, {},
         1e-12, run_wrzesien},
        {"lem:pow-approx.p_le_1", K::CounterexampleCheck, "equivalence fails for p <= 1", {}, {}, 0, run_p_le_1},
        {"lem:Vp.equiv", K::TwoSidedEquivalence, "J_p ~ |V_p(xi)-V_p(eta)|^2", all_p, {}, kBoundSlack, run_vp_equiv},
        {"rem:Vp.lower", K::ExactConstantInequality, "J_p >= (4/p^2)|V_p(xi)-V_p(eta)|^2, p >= 2", large, {},
         kBoundSlack, run_vp_lower},
        {"lem:t-p.scalar", K::ScalarInequality, "1 - t^{-p} <= p(t-1)", {}, {}, 0, run_t_p},
        {"lem:VG.equiv", K::TwoSidedEquivalence, "g(|xi|+|eta|)/(|xi|+|eta|) ~ |V_G diff|^2/|xi-eta|^2", {}, one, 0,
         [](const Claim& c, const RunContext& ctx, ClaimReport& r) {
             run_pair_equiv(c, ctx, r, [](const NFunc& f) {
                 return std::pair<QuantityId, QuantityId>{GFracForm{f}, VGDiffSq{f}};
             });
         }},
        {"lem:VG.identity", K::IdentityCheck, "V_G(xi) = V_1(G(|xi|) xi/|xi|)", {}, one, 1e-12, run_vg_identity},
        {"lem:VG.fin", K::TwoSidedEquivalence, "|G(|xi|)xi/|xi| - G(|eta|)eta/|eta|| ~ G(|xi|)/|xi| |xi-eta|", {}, one,
         0, run_vg_fin},
        {"lem:VG.est", K::ScalarInequality, "1 - (G(s)/s)/(G(r)/r) <= (s_G-1)(r/s-1), r >= s", {}, one, 1e-12,
         run_vg_est},
        {"lem:g-VsqrtG.equiv", K::TwoSidedEquivalence, "g(|xi|+|eta|)|xi-eta| ~ G^{1/2}(|xi|+|eta|)|V_G diff|", {},
         one, 0,
         [](const Claim& c, const RunContext& ctx, ClaimReport& r) {
             run_pair_equiv(c, ctx, r, [](const NFunc& f) {
                 return std::pair<QuantityId, QuantityId>{GSlopeSqForm{f}, GVGForm{f}};
             });
         }},
        {"lem:VG2.equiv", K::TwoSidedEquivalence, "J_G ~ g(|xi|+|eta|)/(|xi|+|eta|)|xi-eta|^2", {}, one, 0,
         [](const Claim& c, const RunContext& ctx, ClaimReport& r) {
             run_pair_equiv(c, ctx, r, [](const NFunc& f) {
                 return std::pair<QuantityId, QuantityId>{JG{f}, GFracForm{f}};
             });
         }},
        {"lem:VG2.lipiec2", K::ExactConstantInequality, "|xi - kappa eta| <= max(2, s_G-1)|xi-eta|", {}, one,
         kBoundSlack, run_lipiec2},
        {"theo:main.chain", K::TwoSidedEquivalence, "five-quantity equivalence chain", {}, one, 0, run_chain},
        {"theo:main.1line", K::TwoSidedEquivalence, "calG/d^2 ~ G_|xi|(d)/d^2 ~ g(|xi|+|eta|)/(|xi|+|eta|)", {}, one, 0,
         run_one_line},
        {"theo:main.Ga", K::TwoSidedEquivalence, "G_a(t) ~ two-branch function, seam continuity", {}, one, 1e-12,
         run_Ga},
        {"theo:main.ga", K::IdentityCheck, "G_a' = g(a+s)s/(a+s)", {}, one, 1e-6, run_ga},
        {"theo:main.equiv3", K::TwoSidedEquivalence, "G_a(t)/t^2 ~ g(a+t)/(a+t) ~ G(a+t)/(a+t)^2", {}, one, 0,
         run_equiv3},
        {"coro:main.chain", K::TwoSidedEquivalence, "power-growth equivalence chain", chain_p, {}, kSharpTolerance,
         run_coro_chain},
        {"coro:superquadratic", K::TwoSidedEquivalence, "G(|xi-eta|) <~ J_G for i_G >= 2", {}, one, 0,
         run_superquadratic},
        {"coro:superquadratic.subquadratic", K::CounterexampleCheck, "G(|xi-eta|) <~ J_G fails for subquadratic G", {},
         sub, 0, run_subquadratic},
        {"opA-cond.model", K::IdentityCheck, "model map growth and monotonicity constants", {}, one, 1e-9, run_model},
    };
    std::sort(v.begin(), v.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
    return v;
}

inline std::optional<Claim> find_claim(const std::vector<Claim>& reg, const std::string& id) {
    for (const auto& c : reg)
        if (c.id == id) return c;
    return std::nullopt;
}

/// Runs one claim; any exception becomes a fail report.
inline ClaimReport run_claim(const Claim& c, const RunContext& ctx = {}) {
    ClaimReport rep;
    rep.claim_id = c.id;
    rep.kind = c.kind;
    rep.tolerance = c.tolerance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        c.runner(c, ctx, rep);
    } catch (const std::exception& e) {
        claims::fail(rep, std::string("error: ") + e.what());
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct ReportSummary {
    std::size_t total = 0, pass = 0, fail = 0, baseline_recorded = 0, not_applicable = 0;
};

inline ReportSummary summarize(const std::vector<ClaimReport>& reps) {
    ReportSummary s;
    for (const auto& r : reps) {
        ++s.total;
        switch (r.status) {
            case ClaimStatus::pass: ++s.pass; break;
            case ClaimStatus::fail: ++s.fail; break;
            case ClaimStatus::baseline_recorded: ++s.baseline_recorded; break;
            case ClaimStatus::not_applicable: ++s.not_applicable; break;
        }
    }
    return s;
}

/// Runs claims in order and returns reports sorted by id.
inline std::vector<ClaimReport> run_claims(const std::vector<Claim>& cs, const RunContext& ctx = {}) {
    std::vector<ClaimReport> out;
    for (const auto& c : cs) out.push_back(run_claim(c, ctx));
    std::sort(out.begin(), out.end(), [](const ClaimReport& a, const ClaimReport& b) { return a.claim_id < b.claim_id; });
    return out;
}

struct Drift {
    std::string claim_id;
    std::string key;
    double baseline;
    double current;
};

/// Measured constants that moved by more than `rel` against a baseline.
inline std::vector<Drift> compare_to_baseline(const std::vector<ClaimReport>& current,
                                              const std::vector<ClaimReport>& baseline, double rel = 0.01) {
    std::vector<Drift> out;
    for (const auto& b : baseline) {
        for (const auto& c : current) {
            if (c.claim_id != b.claim_id) continue;
            for (const auto& [k, v] : b.measured) {
                const auto it = c.measured.find(k);
                if (it == c.measured.end()) continue;
                const double w = it->second;
                const bool same = (v == w) || (std::isfinite(v) && std::isfinite(w) &&
                                               std::abs(w - v) <= rel * std::max(std::abs(v), std::abs(w)));
                if (!same) out.push_back({c.claim_id, k, v, w});
            }
        }
    }
    return out;
}

}  // namespace monolab
