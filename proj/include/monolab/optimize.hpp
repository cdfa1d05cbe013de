#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace monolab {

struct ScalarOptimum {
    double x;
    double value;
};

/// Golden-section minimization of f on [lo, hi] for a fixed iteration count.
template <class F>
ScalarOptimum golden_section_min(F&& f, double lo, double hi, int iterations = 60) {
    constexpr double inv_phi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

template <class F>
ScalarOptimum golden_section_max(F&& f, double lo, double hi, int iterations = 60) {
    auto r = golden_section_min([&](double x) { return -f(x); }, lo, hi, iterations);
    return {r.x, -r.value};
}

template <std::size_t N>
struct BoxBounds {
    std::array<double, N> lo;
    std::array<double, N> hi;

    std::array<double, N> project(std::array<double, N> x) const {
        for (std::size_t i = 0; i < N; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
        return x;
    }
};

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x;
    double value;
    int evaluations;
};

/// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5). Every trial
/// vertex is projected onto the box before evaluation, so the returned point
/// always lies inside it. Non-finite objective values are treated as +inf.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, std::array<double, N> start, std::array<double, N> step,
                             const BoxBounds<N>& box, int iterations) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    auto eval = [&](const std::array<double, N>& x) {
        const double v = f(x);
        return std::isfinite(v) ? v : kInf;
    };

    std::array<std::array<double, N>, N + 1> vx;
    std::array<double, N + 1> fv;
    vx[0] = box.project(start);
    fv[0] = eval(vx[0]);
    int evals = 1;
    for (std::size_t i = 0; i < N; ++i) {
        auto v = vx[0];
        v[i] += step[i];
        if (v[i] > box.hi[i]) v[i] = vx[0][i] - step[i];
        vx[i + 1] = box.project(v);
        fv[i + 1] = eval(vx[i + 1]);
        ++evals;
    }

    std::array<std::size_t, N + 1> order;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i <= N; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[N];
        const std::size_t second = order[N - 1];

        std::array<double, N> centroid{};
        for (std::size_t k = 0; k < N; ++k) {
            const std::size_t i = order[k];
            for (std::size_t j = 0; j < N; ++j) centroid[j] += vx[i][j] / static_cast<double>(N);
        }
        auto along = [&](double t) {
            std::array<double, N> p;
            for (std::size_t j = 0; j < N; ++j) p[j] = centroid[j] + t * (vx[worst][j] - centroid[j]);
            return box.project(p);
        };

        const auto xr = along(-1.0);
        const double fr = eval(xr);
        ++evals;
        if (fr < fv[best]) {
            const auto xe = along(-2.0);
            const double fe = eval(xe);
            ++evals;
            if (fe < fr) {
                vx[worst] = xe;
                fv[worst] = fe;
            } else {
                vx[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            vx[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        const bool outside = fr < fv[worst];
        const auto xc = along(outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        ++evals;
        if (fc < (outside ? fr : fv[worst])) {
            vx[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < N; ++j) vx[i][j] = vx[best][j] + 0.5 * (vx[i][j] - vx[best][j]);
            vx[i] = box.project(vx[i]);
            fv[i] = eval(vx[i]);
            ++evals;
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= N; ++i)
        if (fv[i] < fv[best]) best = i;
    return {vx[best], fv[best], evals};
}

}  // namespace monolab
