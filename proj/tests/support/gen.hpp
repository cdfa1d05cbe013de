#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "monolab/nfunc.hpp"
#include "monolab/pairspace.hpp"

namespace monolab::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return uniform(0, 1) < p; }
    std::uint64_t bits() { return rng_(); }

    /// Mostly generic points, with zero norms, lambda = +-1 and near-diagonal cases mixed in.
    PairPoint point(double lo = 1e-2, double hi = 1e2) {
        double r = log_uniform(lo, hi);
        double s = log_uniform(lo, hi);
        double lam = uniform(-1, 1);
        const int kind = integer(0, 19);
        if (kind == 0) r = 0;
        if (kind == 1) s = 0;
        if (kind == 2) lam = 1;
        if (kind == 3) lam = -1;
        if (kind == 4) {
            s = r * (1 + uniform(-1e-3, 1e-3));
            lam = 1 - uniform(0, 1e-3);
        }
        return PairPoint::make(r, s, lam);
    }

    PairPoint positive_point(double lo = 1e-2, double hi = 1e2) {
        return PairPoint::make(log_uniform(lo, hi), log_uniform(lo, hi), uniform(-1, 1));
    }

    double p(double lo, double hi) { return uniform(lo, hi); }

    NFunc family() {
        switch (integer(0, 5)) {
            case 0: return NFunc::power(uniform(1.1, 5));
            case 1: return NFunc::zygmund(uniform(1.2, 4), uniform(-0.5, 2));
            case 2: return NFunc::scale(log_uniform(0.1, 10), NFunc::power(uniform(1.2, 4)));
            case 3: return NFunc::product(NFunc::power(uniform(0.2, 1)), NFunc::zygmund(uniform(1.2, 3), uniform(0, 1)));
            case 4: return NFunc::sum(NFunc::power(uniform(1.2, 2)), NFunc::power(uniform(2, 4)));
            default: return NFunc::compose(NFunc::power(uniform(1, 2)), NFunc::zygmund(uniform(1.2, 2), uniform(0, 1)));
        }
    }

private:
    std::mt19937_64 rng_;
};

inline double rel_err(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0 ? 0.0 : std::abs(a - b) / m;
}

}  // namespace monolab::testing
