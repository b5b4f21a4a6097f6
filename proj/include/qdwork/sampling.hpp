#pragma once

// Deterministic random samples of rationals, dyadics and series.

#include <random>

#include "qseries.hpp"
#include "rat.hpp"

namespace qdwork {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rat rational(long max_num = 9, long max_den = 6) {
        long d = integer(1, max_den);
        return Rat(integer(-max_num, max_num), d);
    }

    /// n / 2^e with |n| <= max_num, e in {0, 1}.
    Dyadic dyadic(long max_num = 12) { return Dyadic(Rat(integer(-max_num, max_num), integer(0, 1) ? 2 : 1)); }

    /// A p-adic unit dyadic: nonzero numerator prime to p.
    Dyadic unit_dyadic(long p, long max_num = 12) {
        for (;;) {
            Dyadic d = dyadic(max_num);
            if (!d.value().is_zero() && *vp(d.value(), p) == 0) return d;
        }
    }

    /// Power series (no poles) with about `terms` random coefficients below the given degrees.
    QSeries series(const Prec& prec, int terms, int max_eps, int max_lam) {
        QSeries f(prec);
        for (int t = 0; t < terms; ++t)
            f.set(static_cast<int>(integer(0, max_eps - 1)), static_cast<int>(integer(0, max_lam - 1)), rational());
        return f;
    }

    /// Series with constant term 1 (a unit).
    QSeries unit_series(const Prec& prec, int terms, int max_eps, int max_lam) {
        QSeries f = series(prec, terms, max_eps, max_lam);
        f.set(0, 0, Rat(1));
        return f;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace qdwork
