#pragma once

// Plain rational power series in lambda (the q = 1 specialization), implemented
// independently of QSeries so it can serve as an oracle.

#include <stdexcept>
#include <vector>

#include "qseries.hpp"
#include "rat.hpp"

namespace qdwork::classical {

/// sum c[n] lambda^n modulo lambda^{c.size()}.
using Series = std::vector<Rat>;

inline Series zero(long k) { return Series(static_cast<size_t>(k), Rat(0)); }

inline Series add(const Series& f, const Series& g) {
    Series r = f;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + g[i];
    return r;
}
inline Series sub(const Series& f, const Series& g) {
    Series r = f;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - g[i];
    return r;
}
inline Series scale(const Series& f, const Rat& c) {
    Series r = f;
    for (auto& x : r) x = x * c;
    return r;
}
inline Series mul(const Series& f, const Series& g) {
    Series r = zero(static_cast<long>(f.size()));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        for (size_t j = 0; i + j < r.size(); ++j) r[i + j] = r[i + j] + f[i] * g[j];
    }
    return r;
}
inline Series inv(const Series& f) {
    if (f.empty() || f[0].is_zero()) throw std::domain_error("classical::inv: zero constant term");
    Series r = zero(static_cast<long>(f.size()));
    r[0] = Rat(1) / f[0];
    for (size_t n = 1; n < f.size(); ++n) {
        Rat s(0);
        for (size_t i = 1; i <= n; ++i) s = s + f[i] * r[n - i];
        r[n] = -s / f[0];
    }
    return r;
}
/// lambda -> lambda^p.
inline Series frob(const Series& f, long p) {
    Series r = zero(static_cast<long>(f.size()));
    for (size_t i = 0; i * p < r.size(); ++i) r[i * p] = f[i];
    return r;
}
/// d/dlambda; the top coefficient is lost and set to zero.
inline Series deriv(const Series& f) {
    Series r = zero(static_cast<long>(f.size()));
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * Rat(static_cast<long>(i));
    return r;
}

/// Coefficients prod_{i<n} ((i + 1/2)/(i + 1))^2 of F(1/2, 1/2; 1; lambda).
inline Series hypergeometric_f(long k) {
    Series r = zero(k);
    Rat c(1);
    for (long n = 0; n < k; ++n) {
        r[n] = c;
        Rat t = Rat(2 * n + 1, 2 * n + 2);
        c = c * t * t;
    }
    return r;
}

/// log(1 - lambda).
inline Series log_one_minus(long k) {
    Series r = zero(k);
    for (long n = 1; n < k; ++n) r[n] = Rat(-1, n);
    return r;
}

/// Non-logarithmic part K of the second solution f log(lambda) + K:
/// K = -f log(1 - lambda) - sum a_n lambda^n sum_{i<=n} 2/i.
inline Series second_solution_K(long k) {
    Series f = hypergeometric_f(k);
    Series g = zero(k);
    Rat acc(0);
    for (long n = 1; n < k; ++n) {
        acc = acc + Rat(2, n);
        g[n] = f[n] * acc;
    }
    return sub(scale(mul(f, log_one_minus(k)), Rat(-1)), g);
}

/// b = phi(f) H - (1/p) f phi(H) at q = 1 (the log(lambda) parts cancel).
inline Series b_series(long p, long k) {
    Series f = hypergeometric_f(k);
    Series K = second_solution_K(k);
    return sub(mul(frob(f, p), K), scale(mul(f, frob(K, p)), Rat(1, p)));
}

/// lambda(1 - lambda)(f H' - H f') with H = f log(lambda) + K; equals 1.
inline Series wronskian_times_lam_one_minus_lam(long k) {
    Series f = hypergeometric_f(k);
    Series K = second_solution_K(k);
    Series one_minus = zero(k);
    one_minus[0] = Rat(1);
    if (k > 1) one_minus[1] = Rat(-1);
    Series lam = zero(k);
    if (k > 1) lam[1] = Rat(1);
    // f (f/lambda) lambda(1-lambda) = (1-lambda) f^2
    Series w = mul(one_minus, mul(f, f));
    Series inner = sub(mul(f, deriv(K)), mul(K, deriv(f)));
    return add(w, mul(mul(lam, one_minus), inner));
}

/// The unit-root factor (-1)^{(p-1)/2} f / phi(f).
inline Series unit_root_factor(long p, long k) {
    Series f = hypergeometric_f(k);
    Rat sign((p - 1) / 2 % 2 == 0 ? 1 : -1);
    return scale(mul(f, inv(frob(f, p))), sign);
}

/// Embeds a classical series as the eps^0 slice of a QSeries with eps window 1.
inline QSeries to_qseries(const Prec& prec, const Series& f) {
    QSeries r(prec);
    r.shrink_window(1, std::min<int>(prec.k_lam, static_cast<int>(f.size())));
    for (size_t n = 0; n < f.size() && static_cast<int>(n) < r.lam_window(); ++n)
        if (!f[n].is_zero()) r.set(0, static_cast<int>(n), f[n]);
    return r;
}

/// Reads the eps^0 coefficients lambda^0 .. lambda^{k-1} of a QSeries.
inline Series from_qseries(const QSeries& f, long k) {
    Series r = zero(k);
    for (long n = 0; n < k && n < f.lam_window(); ++n) r[n] = f.at(0, static_cast<int>(n));
    return r;
}

}  // namespace qdwork::classical
