#pragma once

// q-numbers and the operators phi, gamma, sigma_l, d_q on truncated series.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "logseries.hpp"
#include "qseries.hpp"
#include "rat.hpp"

namespace qdwork {

/// [a]_q = sum_{i>=1} binom(a, i) eps^{i-1}, as a lambda-free series.
inline QSeries qnum(const Prec& prec, const Rat& a) {
    QSeries r(prec);
    Rat binom(1);
    for (int i = 1; i <= prec.m_eps; ++i) {
        binom = binom * (a - Rat(i - 1)) / Rat(i);
        if (binom.is_zero()) break;
        r.set(i - 1, 0, binom);
    }
    return r;
}
inline QSeries qnum(const Prec& prec, const Dyadic& a) { return qnum(prec, a.value()); }

/// q^a = (1 + eps)^a.
inline QSeries qpow(const Prec& prec, const Rat& a) {
    QSeries r(prec);
    Rat binom(1);
    for (int i = 0; i < prec.m_eps; ++i) {
        if (i > 0) binom = binom * (a - Rat(i - 1)) / Rat(i);
        if (binom.is_zero()) break;
        r.set(i, 0, binom);
    }
    return r;
}
inline QSeries qpow(const Prec& prec, const Dyadic& a) { return qpow(prec, a.value()); }

namespace detail {

// powers[i] = s^i for a lambda-free s with zero constant term, i < m_eps.
inline std::vector<QSeries> eps_substitution_powers(const QSeries& s) {
    const Prec& pr = s.prec();
    std::vector<QSeries> pw;
    pw.push_back(QSeries::one(pr));
    for (int i = 1; i < pr.m_eps; ++i) pw.push_back(mul(pw.back(), s));
    return pw;
}

// Applies eps -> s (s in eps*Q[[eps]]) and lambda^j -> lambda^{scale*j}.
inline QSeries substitute(const QSeries& f, const std::vector<QSeries>& pw, int scale) {
    const Prec& pr = f.prec();
    QSeries r(pr);
    long lw = static_cast<long>(f.lam_window()) * scale;
    int lam_win = static_cast<int>(std::min<long>(pr.k_lam, lw));
    r.shrink_window(f.eps_window(), std::max(lam_win, pr.lam_low));
    for (const auto& [i, j, c] : f.support()) {
        long nj = static_cast<long>(j) * scale;
        if (nj < pr.lam_low) throw precision_error("substitution: lambda exponent below lam_low");
        if (nj >= r.lam_window()) continue;
        for (const auto& [t, z, e] : pw[i].support()) {
            (void)z;
            if (t >= r.eps_window()) break;
            r.add_to(t, static_cast<int>(nj), *c * *e);
        }
    }
    return r;
}

}  // namespace detail

/// Frobenius: eps -> (1+eps)^p - 1, lambda -> lambda^p.
inline QSeries frob(const QSeries& f) {
    const Prec& pr = f.prec();
    QSeries e = qpow(pr, Rat(pr.p)) - QSeries::one(pr);
    return detail::substitute(f, detail::eps_substitution_powers(e), static_cast<int>(pr.p));
}
inline QSeries frob_pow(const QSeries& f, int n) {
    QSeries r = f;
    for (int k = 0; k < n; ++k) r = frob(r);
    return r;
}
/// On l: phi(l) = [p]_q l.
inline LogSeries frob(const LogSeries& f) {
    const Prec& pr = f.prec();
    QSeries pn = qnum(pr, Rat(pr.p));
    QSeries scale = QSeries::one(pr);
    LogSeries r(pr);
    for (int d = 0; d < f.stored_parts(); ++d) {
        if (d > 0) scale = mul(scale, pn);
        r.set_part(d, mul(scale, frob(f.part(d))));
    }
    return r;
}

/// gamma^m: lambda^j -> q^{mj} lambda^j.
inline QSeries gamma_act(const QSeries& f, long m = 1) {
    const Prec& pr = f.prec();
    QSeries r(pr);
    r.shrink_window(f.eps_window(), f.lam_window());
    std::vector<Rat> binoms;
    int cur_j = pr.lam_low - 1;
    for (const auto& [i, j, c] : f.support()) {
        if (j != cur_j) {
            cur_j = j;
            binoms.assign(1, Rat(1));
            Rat e(m * j);
            for (int t = 1; t < pr.m_eps; ++t) binoms.push_back(binoms.back() * (e - Rat(t - 1)) / Rat(t));
        }
        for (int t = 0; i + t < r.eps_window(); ++t)
            if (!binoms[t].is_zero()) r.add_to(i + t, j, *c * binoms[t]);
    }
    return r;
}
/// On l: gamma^m(l) = l + m eps.
inline LogSeries gamma_act(const LogSeries& f, long m = 1) {
    const Prec& pr = f.prec();
    LogSeries shift = LogSeries::ell(pr) + LogSeries(QSeries::eps(pr) * Rat(m));
    LogSeries power(QSeries::one(pr));
    LogSeries r(pr);
    for (int d = 0; d <= f.degree(); ++d) {
        if (d > 0) power = power * shift;
        r += gamma_act(f.part(d), m) * power;
    }
    return r;
}

/// sigma_l: eps -> (1+eps)^l - 1, lambda fixed. l must be a p-adic unit.
inline QSeries sigma_act(const QSeries& f, const Rat& l) {
    const Prec& pr = f.prec();
    if (l.is_zero() || *vp(l, pr.p) != 0)
        throw std::invalid_argument("sigma_act: l = " + l.str() + " is not a p-adic unit");
    QSeries s = qpow(pr, l) - QSeries::one(pr);
    return detail::substitute(f, detail::eps_substitution_powers(s), 1);
}

/// d_q: c lambda^n -> c [n]_q lambda^{n-1}.
inline QSeries dq(const QSeries& f) {
    const Prec& pr = f.prec();
    QSeries r(pr);
    r.shrink_window(f.eps_window(), std::max(pr.lam_low, f.lam_window() - 1));
    int cur_j = pr.lam_low - 1;
    QSeries qn(pr);
    for (const auto& [i, j, c] : f.support()) {
        if (j == 0) continue;
        if (j - 1 < pr.lam_low) throw precision_error("dq: lambda exponent below lam_low");
        if (j != cur_j) {
            cur_j = j;
            qn = qnum(pr, Rat(j));
        }
        for (const auto& [t, z, e] : qn.support()) {
            (void)z;
            if (i + t < r.eps_window()) r.add_to(i + t, j - 1, *c * *e);
        }
    }
    return r;
}

/// d_q(sum f_d l^d) = sum_d [d_q(f_d) l^d + gamma(f_d) ((l+eps)^d - l^d)/(eps lambda)].
inline LogSeries dq(const LogSeries& f) {
    const Prec& pr = f.prec();
    LogSeries r(pr);
    for (int d = 0; d <= f.degree(); ++d) {
        const QSeries fd = f.part(d);
        LogSeries term(pr);
        term.set_part(d, dq(fd));
        if (d > 0) {
            QSeries gf = gamma_act(fd).shift_lambda(-1);
            Rat binom(1);
            for (int k = 0; k < d; ++k) {
                // C(d, k) eps^{d-k-1} l^k
                LogSeries t(pr);
                t.set_part(k, mul(QSeries::monomial(pr, binom, d - k - 1, 0), gf));
                term += t;
                binom = binom * Rat(d - k) / Rat(k + 1);
            }
        }
        r += term;
    }
    return r;
}

/// Defining quotient (gamma - 1)/(eps lambda), used as an oracle for dq.
inline QSeries dq_quotient(const QSeries& f) {
    const Prec& pr = f.prec();
    return div_exact(gamma_act(f) - f, QSeries::monomial(pr, Rat(1), 1, 1));
}

/// C_theta(n) = prod_{nu<n} [theta + nu]_q.
inline QSeries c_theta(const Prec& prec, const Rat& theta, long n) {
    QSeries r = QSeries::one(prec);
    for (long nu = 0; nu < n; ++nu) {
        Rat x = theta + Rat(nu);
        if (x.is_zero()) throw std::domain_error("c_theta: zero factor [0]_q");
        r = mul(r, qnum(prec, x));
    }
    return r;
}

/// A_{1/2}(n) = C_{1/2}(n) / C_1(n) for n < count. Every value is asserted p-integral.
inline std::vector<QSeries> a_theta_half_seq(const Prec& prec, long count) {
    std::vector<QSeries> out;
    if (count <= 0) return out;
    out.push_back(QSeries::one(prec));
    for (long n = 1; n < count; ++n) {
        QSeries next = mul(out.back(), mul(qnum(prec, Rat(2 * n - 1, 2)), invert(qnum(prec, Rat(n)))));
        if (!is_p_integral(next))
            throw std::logic_error("a_theta_half: A_{1/2}(" + std::to_string(n) + ") is not p-integral");
        out.push_back(std::move(next));
    }
    return out;
}
inline QSeries a_theta_half(const Prec& prec, long n) { return a_theta_half_seq(prec, n + 1).back(); }

/// Phi_{p^m}(q) = [p^m]_q / [p^{m-1}]_q.
inline QSeries cyclotomic_q(const Prec& prec, int m) {
    if (m < 1) throw std::invalid_argument("cyclotomic_q: m >= 1 required");
    mpz_class hi, lo;
    mpz_ui_pow_ui(hi.get_mpz_t(), static_cast<unsigned long>(prec.p), static_cast<unsigned long>(m));
    lo = hi / prec.p;
    return div_exact(qnum(prec, Rat(hi, 1)), qnum(prec, Rat(lo, 1)));
}

/// [p^n]_q.
inline QSeries qnum_ppow(const Prec& prec, int n) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(prec.p), static_cast<unsigned long>(n));
    return qnum(prec, Rat(v, 1));
}

inline long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// rho(x) = 1 if x > 0 else 0.
inline int rho(const Rat& x) { return x.sign() > 0 ? 1 : 0; }

/// Closed form: N = b + p^m c with 0 <= b < p^m; 1 iff b >= (p^m + 1)/2.
inline int r_count(long p, long N, int m) {
    if (m < 1) throw std::invalid_argument("r_count: m >= 1 required");
    long pm = ipow(p, m);
    long b = N % pm;
    return 2 * b >= pm + 1 ? 1 : 0;
}

/// Counting definition over the factors of C_{1/2}(N) and C_1(N):
/// #{0 <= i < N : v_p(i + 1/2) >= m} - #{1 <= i <= N : v_p(i) >= m}.
inline long r_count_brute(long p, long N, int m) {
    long c1 = 0, c2 = 0;
    for (long i = 0; i < N; ++i) {
        if (valuation_at_least(vp(Rat(2 * i + 1, 2), p), m)) ++c1;
        if (valuation_at_least(vp(Rat(i + 1), p), m)) ++c2;
    }
    return c1 - c2;
}

/// The unique theta' with p theta' - theta in {0, ..., p-1}.
inline Dyadic theta_prime(long p, const Dyadic& theta) {
    const Rat& t = theta.value();
    if (!is_p_integral(t, p)) throw std::invalid_argument("theta_prime: theta not p-integral");
    if (t.sign() <= 0 && t.is_integer()) throw std::invalid_argument("theta_prime: theta is zero or a negative integer");
    for (long k = 0; k < p; ++k) {
        Rat cand = (t + Rat(k)) / Rat(p);
        if (is_p_integral(cand, p)) return Dyadic(cand);
    }
    throw std::domain_error("theta_prime: no solution");
}

/// Hasse polynomial h(lambda) = sum_{i <= (p-1)/2} binom((p-1)/2, i)^2 lambda^i.
inline QSeries hasse_poly(const Prec& prec) {
    long h = (prec.p - 1) / 2;
    QSeries r(prec);
    for (long i = 0; i <= h; ++i) {
        Rat b = gen_binom(Rat(h), i);
        r.set(0, static_cast<int>(i), b * b);
    }
    return r;
}

}  // namespace qdwork
