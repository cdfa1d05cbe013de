// Runs the ten acceptance criteria and prints one line per criterion.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "monolab/lemmas.hpp"
#include "monolab/reconstruct.hpp"
#include "support/gen.hpp"

using namespace monolab;
using namespace monolab::quantity;
using monolab::testing::Gen;
using monolab::testing::rel_err;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [FAILED: " << what << "]";
        }
    }
};

std::string g(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. p-small-lower constant min{1, 2(p-1)}
void criterion1(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = sharp_constant_sweep(SharpClaim::PSmallLower, default_small_p(), SearchDomain{});
    double worst = 0;
    for (const auto& r : rows) {
        worst = std::max(worst, std::abs(r.deviation));
        o.require(std::abs(r.deviation) <= 0.02, "p=" + g(r.p) + " deviation " + g(r.deviation));
        if (r.p < 1.5) {
            const auto& a = r.bound.arg_inf;
            const double ratio = std::min(a.r(), a.s()) / std::max(a.r(), a.s());
            o.require(std::abs(a.lambda() - 1) < 1e-3, "p=" + g(r.p) + " arg lambda " + g(a.lambda()));
            o.require(std::abs(ratio - 1) < 1e-2, "p=" + g(r.p) + " arg s/r " + g(ratio));
        }
    }
    const double t = elapsed(t0);
    o.require(t < 60, "runtime " + g(t) + " s");
    o.detail << "max |deviation| " << g(worst) << ", " << g(t) << " s";
}

// 2. p-large-lower constant 2^{2-p}
void criterion2(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = sharp_constant_sweep(SharpClaim::PLargeLower, {2, 2.5, 3, 4}, SearchDomain{});
    double worst = 0, worst_lam = 0, worst_gap = 0;
    for (const auto& r : rows) {
        const auto& a = r.bound.arg_inf;
        const double lam = std::abs(a.lambda() + 1);
        const double gap = std::abs(a.r() - a.s()) / a.r();
        worst = std::max(worst, std::abs(r.deviation));
        worst_lam = std::max(worst_lam, lam);
        worst_gap = std::max(worst_gap, gap);
        o.require(std::abs(r.deviation) <= 0.01, "p=" + g(r.p) + " deviation " + g(r.deviation));
        o.require(lam < 1e-3, "p=" + g(r.p) + " |lambda+1| " + g(lam));
        o.require(gap < 1e-3, "p=" + g(r.p) + " |r-s|/r " + g(gap));
    }
    const double t = elapsed(t0);
    o.require(t < 60, "runtime " + g(t) + " s");
    o.detail << "max |deviation| " << g(worst) << ", max |lambda+1| " << g(worst_lam) << ", max |r-s|/r "
             << g(worst_gap) << ", " << g(t) << " s";
}

// 3. (1/2)|xi-eta|^2 (|xi|^{p-2}+|eta|^{p-2}) >= 2^{2-p}|xi-eta|^p
void criterion3(Outcome& o) {
    auto lhs = [](double p, const PairPoint& pt) { return 0.5 * evaluate(RhsPowerForm{p, PowerShape::sum_pow_weighted}, pt); };
    auto rhs = [](double p, const PairPoint& pt) { return std::pow(2.0, 2 - p) * evaluate(SumNorm{p}, pt); };
    const auto eta0 = PairPoint::make(1, 0, 1);
    const double ratio = rhs(2.5, eta0) / lhs(2.5, eta0);
    o.require(ratio > 1 && std::abs(ratio - std::sqrt(2.0)) < 1e-3, "p=2.5 ratio " + g(ratio));
    o.detail << "p=2.5 violation ratio " << g(ratio);
    const DomainGrid grid{SearchDomain{}};
    for (double p : {3.0, 3.5, 4.0}) {
        double slack = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto pt = grid.point(i);
            const double b = rhs(p, pt);
            if (!(b > 0)) continue;
            slack = std::min(slack, (lhs(p, pt) - b) / b);
        }
        o.require(slack >= -1e-9, "p=" + g(p) + " slack " + g(slack));
        o.detail << ", p=" << g(p) << " min rel slack " << g(slack);
    }
}

// 4. J_p >= (4/p^2) |V_p(xi)-V_p(eta)|^2
void criterion4(Outcome& o) {
    constexpr std::size_t kPoints = 1000000;
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
        Gen gen(20240601 + static_cast<std::uint64_t>(10 * p));
        std::size_t violations = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < kPoints; ++k) {
            const auto pt = gen.point(1e-4, 1e4);
            const double j = evaluate(Jp{p}, pt);
            const double v = 4 / (p * p) * evaluate(VpDiffSq{p}, pt);
            if (v > 0) worst = std::min(worst, j / v);
            if (j < v * (1 - 1e-12)) ++violations;
        }
        o.require(violations == 0, "p=" + g(p) + ": " + std::to_string(violations) + " violations");
        o.detail << (p == 2 ? "" : ", ") << "p=" << g(p) << " min ratio " << g(worst);
    }
}

// 5. the five-quantity chain
void criterion5(Outcome& o) {
    const std::vector<std::pair<NFunc, double>> families{{NFunc::power(1.5), 1.5},
                                                         {NFunc::power(3), 3},
                                                         {NFunc::zygmund(2, 1), 0},
                                                         {NFunc::zygmund(1.5, -0.3), 0}};
    // reference band of J_G / g-form for power growth, from the oracle script
    auto power_band = [](double p) {
        return p == 1.5 ? std::pair{0.47140452079103168, 0.94280904158206336} : std::pair{1.0 / 6, 1.0 / 3};
    };
    SweepOptions opt;
    for (const auto& [f, p] : families) {
        const auto qs = claims::chain_quantities(f);
        const auto m = equivalence_matrix(qs, SearchDomain{}, opt, false);
        std::size_t finite = 0;
        RatioBound frac_over_jg;
        for (const auto& e : m) {
            if (std::isfinite(e.bound.sup_est) && e.bound.inf_est > 0) ++finite;
            if (e.num == 3 && e.den == 4) frac_over_jg = e.bound;
        }
        o.require(m.size() == 10 && finite == 10, f.describe() + ": " + std::to_string(finite) + " of 10 pairs bounded");
        // J_G / GFrac band is the reciprocal of GFrac / J_G
        const double lo = 1 / frac_over_jg.sup_est, hi = 1 / frac_over_jg.inf_est;
        o.detail << (o.detail.tellp() > 0 ? "; " : "") << f.describe() << " J_G/g-form [" << g(lo) << ", " << g(hi) << "]";
        if (p > 0) {
            const auto [rlo, rhi] = power_band(p);
            o.require(std::abs(lo / rlo - 1) <= 0.05 && std::abs(hi / rhi - 1) <= 0.05,
                      f.describe() + " band differs from [" + g(rlo) + ", " + g(rhi) + "]");
        } else {
            SweepOptions other = opt;
            other.threads = opt.threads == 1 ? 2 : 1;
            const auto again = equivalence_matrix(qs, SearchDomain{}, other, false);
            double drift = 0;
            for (std::size_t i = 0; i < m.size(); ++i) {
                drift = std::max(drift, rel_err(again[i].bound.inf_est, m[i].bound.inf_est));
                drift = std::max(drift, rel_err(again[i].bound.sup_est, m[i].bound.sup_est));
            }
            o.require(drift <= 0.01, f.describe() + " rerun drift " + g(drift));
            o.detail << " rerun drift " << g(drift);
        }
    }
}

// 6. reduced versus reconstructed evaluation
void criterion6(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    Gen gen(6);
    std::size_t checked = 0, bad = 0;
    double worst = 0;
    while (checked < 10000) {
        const auto f = gen.family();
        const double p = gen.p(1.1, 5);
        const std::vector<QuantityId> qs{Jp{p},
                                         JG{f},
                                         VpDiffSq{p},
                                         VbarDiffSq{p, gen.uniform(0, 2)},
                                         VGDiffSq{f},
                                         CalG{f},
                                         GShiftForm{f},
                                         GFracForm{f},
                                         RhsPowerForm{p, PowerShape::sum_weighted},
                                         SumNorm{p},
                                         GOfDiff{f},
                                         GSlopeSqForm{f},
                                         GVGForm{f}};
        const auto& q = qs[static_cast<std::size_t>(gen.integer(0, static_cast<int>(qs.size()) - 1))];
        const auto pt = gen.point(1e-3, 1e3);
        if (!admissible(q, pt)) continue;
        const int dim = gen.integer(2, 8);
        const double e = rel_err(evaluate(q, pt), reconstruct_and_eval(q, pt, dim, gen.bits()));
        worst = std::max(worst, e);
        if (e > 1e-10) ++bad;
        ++checked;
    }
    const double t = elapsed(t0);
    o.require(bad == 0, std::to_string(bad) + " disagreements");
    o.require(t < 10, "runtime " + g(t) + " s");
    o.detail << checked << " checks, max rel err " << g(worst) << ", " << g(t) << " s";
}

// 7. indices
void criterion7(Outcome& o) {
    for (double p : {1.1, 2.0, 3.7}) {
        const auto ix = compute_indices(NFunc::power(p));
        const double tol = 8 * p * std::numeric_limits<double>::epsilon();
        o.require(std::abs(ix.i_G - p) <= tol && std::abs(ix.s_G - p) <= tol, "Power " + g(p));
    }
    const auto zyg = NFunc::zygmund(2, 1);
    const auto iz = compute_indices(zyg);
    o.require(std::abs(iz.i_G - 2) <= 1e-6, "Zygmund i_G " + g(iz.i_G));
    o.require(iz.inf.limits.at_zero && iz.inf.limits.at_infinity, "Zygmund limit markers");
    o.detail << "Zygmund(2,1) i_G " << g(iz.i_G) << " s_G " << g(iz.s_G);
    std::size_t violations = 0;
    for (const auto& f : {NFunc::power(1.1), NFunc::power(2), NFunc::power(3.7), zyg}) {
        const auto ix = compute_indices(f);
        for (double t : log_grid(ix.grid.t_min, ix.grid.t_max, ix.grid.n)) {
            const double G = f.value(t), h = t * f.slope(t);
            if (ix.i_G * G > h * (1 + 1e-12) || h > ix.s_G * G * (1 + 1e-12)) ++violations;
        }
    }
    o.require(violations == 0, std::to_string(violations) + " sandwich violations");
}

// 8. 1 - t^{-p} <= p (t - 1)
void criterion8(Outcome& o) {
    std::size_t n = 0, violations = 0;
    for (int i = 1; i <= 100; ++i) {
        const double p = 0.1 * i;
        for (double t : log_grid(1, 1e6, 100)) {
            ++n;
            if (-std::expm1(-p * std::log(t)) > p * (t - 1)) ++violations;
        }
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.detail << n << " grid points, " << violations << " violations";
}

// 9. V_G = V_1(G(|xi|) xi/|xi|) and branch continuity of the two-branch function
void criterion9(Outcome& o) {
    constexpr std::size_t kPoints = 100000;
    double worst_vg = 0, worst_seam = 0;
    for (const auto& f : {NFunc::power(1.5), NFunc::power(3), NFunc::zygmund(2, 1), NFunc::zygmund(1.5, -0.3)}) {
        Gen gen(9);
        for (std::size_t k = 0; k < kPoints; ++k) {
            const auto pt = gen.point(1e-4, 1e4);
            const double a = eval_V_diff_sq(vdiff::VG{f}, pt);
            const double b = eval_V_diff_sq(vdiff::Vp{1}, PairPoint::make(f.value(pt.r()), f.value(pt.s()), pt.lambda()));
            worst_vg = std::max(worst_vg, rel_err(a, b));
            // |xi - eta| = |xi| exactly when lambda = s / (2 r), s <= 2 r
            const double r = gen.log_uniform(1e-4, 1e4);
            const double s = 2 * r * gen.uniform(1e-6, 1);
            const auto br = calG_branches(f, PairPoint::make(r, s, s / (2 * r)));
            worst_seam = std::max(worst_seam, rel_err(br.far, br.near));
        }
    }
    o.require(worst_vg <= 1e-12, "V_G identity " + g(worst_vg));
    o.require(worst_seam <= 1e-12, "seam " + g(worst_seam));
    o.detail << "max rel diff V_G " << g(worst_vg) << ", seam " << g(worst_seam);
}

// 10. unboundedness probe
void criterion10(Outcome& o) {
    const double p = 0.5;
    const QuantityId num = Jp{p}, den = RhsPowerForm{p, PowerShape::sum_weighted};
    const auto rows = unboundedness_probe(num, den, ProbePath::xi_eq_c_eta, {1e-1, 1e-4});
    const double factor = rows[1].ratio / rows[0].ratio;
    o.require(factor > 10, "p=0.5 growth factor " + g(factor));
    o.detail << "p=0.5 ratio " << g(rows[0].ratio) << " -> " << g(rows[1].ratio) << " (factor " << g(factor) << ")";
    const auto one = unboundedness_probe(Jp{1}, RhsPowerForm{1, PowerShape::sum_weighted}, ProbePath::eta_eq_c_xi);
    bool zero = true, positive = true;
    for (const auto& r : one) {
        zero = zero && r.num == 0;
        positive = positive && r.den > 0;
    }
    o.require(zero && positive, "p=1 numerator/denominator");
    o.detail << "; p=1 numerator zero on " << one.size() << " rows, denominator positive";
}

}  // namespace

int main() {
    const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                               criterion5, criterion6, criterion7, criterion8,
                                                               criterion9, criterion10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i](o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        if (!o.ok) ++failed;
        std::printf("criterion %zu: %s  %s  (%.1f s)\n", i + 1, o.ok ? "PASS" : "FAIL", o.detail.str().c_str(),
                    elapsed(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
