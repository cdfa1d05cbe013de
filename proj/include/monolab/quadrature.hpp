#pragma once

#include <cmath>
#include <cstddef>

namespace monolab {

template <class Real>
struct QuadResult {
    Real value{};
    Real error_estimate{};
    bool converged = true;
    std::size_t evaluations = 0;
};

namespace detail {

template <class Real, class F>
Real simpson_step(F& f, Real a, Real fa, Real m, Real fm, Real b, Real fb, Real whole,
                  Real tol, int depth, QuadResult<Real>& out) {
    const Real lm = (a + m) / 2;
    const Real rm = (m + b) / 2;
    const Real flm = f(lm);
    const Real frm = f(rm);
    out.evaluations += 2;
    const Real left = (m - a) / 6 * (fa + 4 * flm + fm);
    const Real right = (b - m) / 6 * (fm + 4 * frm + fb);
    const Real delta = left + right - whole;
    if (std::abs(delta) <= 15 * tol) {
        out.error_estimate += std::abs(delta) / 15;
        return left + right + delta / 15;
    }
    if (depth <= 0 || !(m > a && b > m)) {
        out.converged = false;
        out.error_estimate += std::abs(delta) / 15;
        return left + right + delta / 15;
    }
    return simpson_step(f, a, fa, lm, flm, m, fm, left, tol / 2, depth - 1, out) +
           simpson_step(f, m, fm, rm, frm, b, fb, right, tol / 2, depth - 1, out);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. The local acceptance test
/// uses max(abs_tol, rel_tol * |coarse estimate|) split over subintervals.
/// A non-converged result is returned with converged == false.
template <class Real, class F>
QuadResult<Real> adaptive_simpson(F&& f, Real a, Real b, Real rel_tol, Real abs_tol,
                                  int max_depth = 48) {
    QuadResult<Real> out;
    if (a == b) {
        out.value = 0;
        return out;
    }
    const Real fa = f(a);
    const Real fb = f(b);
    const Real m = (a + b) / 2;
    const Real fm = f(m);
    out.evaluations = 3;
    const Real whole = (b - a) / 6 * (fa + 4 * fm + fb);

    // Seed with a 4-panel estimate so the relative target is not fooled by a
    // coarse whole-interval value that happens to be tiny.
    const Real q1 = (a + m) / 2;
    const Real q3 = (m + b) / 2;
    const Real fq1 = f(q1);
    const Real fq3 = f(q3);
    out.evaluations += 2;
    const Real refined = (m - a) / 6 * (fa + 4 * fq1 + fm) + (b - m) / 6 * (fm + 4 * fq3 + fb);
    Real scale = std::abs(refined);
    if (std::abs(whole) > scale) scale = std::abs(whole);
    Real tol = rel_tol * scale;
    if (abs_tol > tol) tol = abs_tol;

    const Real left = (m - a) / 6 * (fa + 4 * fq1 + fm);
    const Real right = (b - m) / 6 * (fm + 4 * fq3 + fb);
    out.value = detail::simpson_step(f, a, fa, q1, fq1, m, fm, left, tol / 2, max_depth, out) +
                detail::simpson_step(f, m, fm, q3, fq3, b, fb, right, tol / 2, max_depth, out);
    return out;
}

}  // namespace monolab
