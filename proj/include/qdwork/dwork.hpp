#pragma once

// q-analogues of Dwork's formal congruences for the sequence A_{1/2}(n)^2.

#include <functional>
#include <string>
#include <vector>

#include "context.hpp"
#include "qcalc.hpp"
#include "report.hpp"

namespace qdwork {

/// A sequence n -> B(n) of lambda-free series (B(n) = 0 for n < 0).
struct BSeq {
    std::function<QSeries(long)> eval;
    std::string description;

    QSeries operator()(long n) const { return eval(n); }
};

inline BSeq bseq_a(std::shared_ptr<const Context> ctx) {
    return {[ctx](long n) { return n < 0 ? QSeries(ctx->prec()) : ctx->a(n); }, "a_n"};
}
inline BSeq bseq_one(const Prec& prec) {
    return {[prec](long n) { return n < 0 ? QSeries(prec) : QSeries::one(prec); }, "1"};
}

namespace detail {

inline std::string qint_label(long p, int k) { return "[" + std::to_string(p) + "^" + std::to_string(k) + "]_q"; }

// Decides f in modulus * R on the window; claims beyond p^{n_p} are refused.
inline CongruenceReport decide(CongruenceReport r, const QSeries& f, const QSeries& modulus, int ppow) {
    if (ppow > f.prec().n_p)
        throw inconclusive_error("modulus p^" + std::to_string(ppow) + " exceeds n_p = " + std::to_string(f.prec().n_p));
    ValuationWitness w = divisibility_witness(f, modulus);
    r.verdict = verdict_of(w.ok);
    r.witness = witness_json(w);
    return r;
}

inline json dyadic_json(const Dyadic& d) { return d.value().str(); }

}  // namespace detail

/// Multiplicative congruence for blocks of C_t:
/// C_t(a + mu p + m p^{s+1}) / phi(C_t'(mu + m p^s)) against the product of the three factors,
/// modulo 1 + [p^{s+1+extra}]_q R.
inline CongruenceReport check_lemma11(const Context& ctx, const Dyadic& theta, long a, long mu, long m, int s,
                                      int extra = 0) {
    const Prec& pr = ctx.prec();
    long p = pr.p;
    CongruenceReport base{"lemma11",
                          json{{"theta", detail::dyadic_json(theta)}, {"a", a}, {"mu", mu}, {"m", m}, {"s", s}},
                          detail::qint_label(p, s + 1 + extra)};
    if (extra) base.params["extra"] = extra;
    return guarded(base, [&](CongruenceReport r) {
        if (a < 0 || a >= p || mu < 1 || m < 1 || s < 1) throw std::invalid_argument("lemma11: parameter out of range");
        const Rat& t = theta.value();
        Rat tp = theta_prime(p, theta).value();
        long ps = ipow(p, s), ps1 = ps * p;
        auto ratio = [&](long n1, long n2) { return mul(c_theta(pr, t, n1), invert(frob(c_theta(pr, tp, n2)))); };
        QSeries lhs = ratio(a + mu * p + m * ps1, mu + m * ps);
        QSeries rhs = mul(ratio(m * ps1, m * ps), ratio(a + mu * p, mu));
        if (rho(Rat(a) + t - Rat(p) * tp)) {
            QSeries corr = QSeries::one(pr) +
                           mul(mul(qpow(pr, tp + Rat(mu)), qnum(pr, Rat(m * ps))), invert(qnum(pr, tp + Rat(mu))));
            rhs = mul(rhs, frob(corr));
        }
        QSeries q = mul(lhs, invert(rhs)) - QSeries::one(pr);
        return detail::decide(r, q, qnum_ppow(pr, s + 1 + extra), s + 1 + extra);
    });
}

/// C_t(m p^{s+1}) / phi(C_t'(m p^s)) == C_1(m p^{s+1}) / phi(C_1(m p^s)) mod 1 + [p^{s+1+extra}]_q R.
inline CongruenceReport check_lemma12(const Context& ctx, const Dyadic& theta, long m, int s, int extra = 0) {
    const Prec& pr = ctx.prec();
    long p = pr.p;
    CongruenceReport base{"lemma12", json{{"theta", detail::dyadic_json(theta)}, {"m", m}, {"s", s}},
                          detail::qint_label(p, s + 1 + extra)};
    if (extra) base.params["extra"] = extra;
    return guarded(base, [&](CongruenceReport r) {
        if (m < 1 || s < 1) throw std::invalid_argument("lemma12: parameter out of range");
        const Rat& t = theta.value();
        Rat tp = theta_prime(p, theta).value();
        long ps = ipow(p, s), ps1 = ps * p;
        QSeries lhs = mul(c_theta(pr, t, m * ps1), invert(frob(c_theta(pr, tp, m * ps))));
        QSeries rhs = mul(c_theta(pr, Rat(1), m * ps1), invert(frob(c_theta(pr, Rat(1), m * ps))));
        QSeries q = mul(lhs, invert(rhs)) - QSeries::one(pr);
        return detail::decide(r, q, qnum_ppow(pr, s + 1 + extra), s + 1 + extra);
    });
}

/// A(a + mu p) / phi(A(mu)) == 0 mod [p^{1 + v_p(mu + 1/2) + extra}]_q R, for a > (p-1)/2.
inline CongruenceReport check_cor_i(const Context& ctx, long a, long mu, int extra = 0) {
    const Prec& pr = ctx.prec();
    long p = pr.p;
    if (a < 0 || a >= p || 2 * a <= p - 1) throw std::invalid_argument("cor_i: requires (p-1)/2 < a < p");
    if (mu < 0) throw std::invalid_argument("cor_i: mu >= 0 required");
    int k = 1 + static_cast<int>(*vp(Rat(2 * mu + 1, 2), p)) + extra;
    CongruenceReport base{"cor_i", json{{"a", a}, {"mu", mu}}, detail::qint_label(p, k)};
    if (extra) base.params["extra"] = extra;
    return guarded(base, [&](CongruenceReport r) {
        QSeries v = mul(ctx.A(a + mu * p), invert(frob(ctx.A(mu))));
        return detail::decide(r, v, qnum_ppow(pr, k), k);
    });
}

/// A(n + m p^{s+1}) / phi(A([n/p] + m p^s)) == A(n) / phi(A([n/p])) mod [p^{s+1+extra}]_q R.
inline CongruenceReport check_cor_ii(const Context& ctx, long n, long m, int s, int extra = 0) {
    const Prec& pr = ctx.prec();
    long p = pr.p;
    CongruenceReport base{"cor_ii", json{{"n", n}, {"m", m}, {"s", s}}, detail::qint_label(p, s + 1 + extra)};
    if (extra) base.params["extra"] = extra;
    return guarded(base, [&](CongruenceReport r) {
        long ps = ipow(p, s);
        auto side = [&](long n1, long n2) { return mul(ctx.A(n1), invert(frob(ctx.A(n2)))); };
        QSeries d = side(n + m * ps * p, n / p + m * ps) - side(n, n / p);
        return detail::decide(r, d, qnum_ppow(pr, s + 1 + extra), s + 1 + extra);
    });
}

/// sum_{j in [lo, hi)} B(j) lambda^j.
inline QSeries bseq_poly(const Prec& prec, const BSeq& B, long lo, long hi) {
    QSeries r(prec);
    for (long j = lo; j < hi && j < prec.k_lam; ++j) {
        QSeries bj = B(j);
        for (const auto& [i, z, v] : bj.support())
            if (z == 0) r.set(i, static_cast<int>(j), *v);
    }
    return r;
}

/// Formal congruence with A = B:
/// F phi(sum_{j in [m p^s, (m+1) p^s)} B(j) lambda^j) == phi(G) sum_{j in [m p^{s+1}, (m+1) p^{s+1})} A(j) lambda^j
/// modulo [p^{s+1}]_q phi^{s+1}(B(m)) R[[lambda]], decided per lambda-coefficient.
inline CongruenceReport check_thm2(const Prec& pr, const BSeq& B, long m, int s, int extra = 0) {
    long p = pr.p;
    CongruenceReport base{"thm2", json{{"B", B.description}, {"m", m}, {"s", s}},
                          detail::qint_label(p, s + 1 + extra) + " phi^" + std::to_string(s + 1) + "(B(" +
                              std::to_string(m) + "))"};
    if (extra) base.params["extra"] = extra;
    return guarded(base, [&](CongruenceReport r) {
        long ps = ipow(p, s), ps1 = ps * p;
        if ((m + 1) * ps1 > pr.k_lam)
            throw inconclusive_error("thm2: k_lam = " + std::to_string(pr.k_lam) + " < (m+1) p^{s+1} = " +
                                     std::to_string((m + 1) * ps1));
        QSeries F = bseq_poly(pr, B, 0, pr.k_lam);
        QSeries lhs = mul(F, frob(bseq_poly(pr, B, m * ps, (m + 1) * ps)));
        QSeries rhs = mul(frob(F), bseq_poly(pr, B, m * ps1, (m + 1) * ps1));
        QSeries modulus = mul(qnum_ppow(pr, s + 1 + extra), frob_pow(B(m), s + 1));
        return detail::decide(r, lhs - rhs, modulus, s + 1 + extra);
    });
}

/// U_a(j, N) = A(a + p(N-j)) phi(B(j)) - phi(B(N-j)) A(a + p j), with A = B.
inline QSeries U_a(const BSeq& B, long p, long a, long j, long N) {
    return mul(B(a + p * (N - j)), frob(B(j))) - mul(frob(B(N - j)), B(a + p * j));
}

/// H_a(m, s, N) = sum_{j in [m p^s, (m+1) p^s)} U_a(j, N).
inline QSeries H_a(const Prec& pr, const BSeq& B, long a, long m, int s, long N) {
    long ps = ipow(pr.p, s);
    QSeries r(pr);
    for (long j = m * ps; j < (m + 1) * ps; ++j) r += U_a(B, pr.p, a, j, N);
    return r;
}

/// H_a(m, s, N) = 0 for N < m p^s.
inline bool dw24_holds(const Prec& pr, const BSeq& B, long a, long m, int s, long N) {
    return N >= m * ipow(pr.p, s) || H_a(pr, B, a, m, s, N).is_zero();
}

/// sum_{m <= T} H_a(m, s, N) = 0 whenever (T+1) p^s > N.
inline bool dw25_holds(const Prec& pr, const BSeq& B, long a, long T, int s, long N) {
    if ((T + 1) * ipow(pr.p, s) <= N) return true;
    QSeries sum(pr);
    for (long m = 0; m <= T; ++m) sum += H_a(pr, B, a, m, s, N);
    return sum.is_zero();
}

/// H_a(m, s, N) = sum_{mu < p} H_a(mu + m p, s - 1, N), s >= 1.
inline bool dw26_holds(const Prec& pr, const BSeq& B, long a, long m, int s, long N) {
    if (s < 1) throw std::invalid_argument("dw26: s >= 1 required");
    QSeries sum(pr);
    for (long mu = 0; mu < pr.p; ++mu) sum += H_a(pr, B, a, mu + m * pr.p, s - 1, N);
    return (sum - H_a(pr, B, a, m, s, N)).is_zero();
}

/// B(i + m p^s) == 0 mod phi^s(B(m)) R for i < p^s.
inline bool dw27_holds(const Prec& pr, const BSeq& B, long i, long m, int s) {
    return divisible_by(B(i + m * ipow(pr.p, s)), frob_pow(B(m), s));
}

/// Hypothesis (a) of the formal congruence for B:
/// B(n + m p^{s+1}) / phi(B([n/p] + m p^s)) == B(n) / phi(B([n/p])) mod [p^{s+1}]_q.
inline bool thm2_hypothesis_a(const Prec& pr, const BSeq& B, long n, long m, int s) {
    long ps = ipow(pr.p, s);
    auto side = [&](long n1, long n2) { return mul(B(n1), invert(frob(B(n2)))); };
    return divisible_by(side(n + m * ps * pr.p, n / pr.p + m * ps) - side(n, n / pr.p), qnum_ppow(pr, s + 1));
}

/// F_s = sum_{j < p^s} a_j lambda^j.
inline QSeries truncated_F_s(const Context& ctx, int s) {
    const Prec& pr = ctx.prec();
    long ps = ipow(pr.p, s);
    if (ps > pr.k_lam) throw inconclusive_error("truncated_F_s: p^s exceeds k_lam");
    return lambda_sum(pr, ctx.a_list(ps), 0, ps);
}

/// f_s = F_{s+1} / phi(F_s).
inline QSeries unit_ratio_f(const Context& ctx, int s) {
    return mul(truncated_F_s(ctx, s + 1), invert(frob(truncated_F_s(ctx, s))));
}

/// f_{s+1} == f_s mod (p, eps)^{s+1+extra}.
inline CongruenceReport unit_limit_check(const Context& ctx, int s, int extra = 0) {
    const Prec& pr = ctx.prec();
    CongruenceReport base{"thm3", json{{"s", s}}, "(p, eps)^" + std::to_string(s + 1 + extra)};
    if (extra) base.params["extra"] = extra;
    return guarded(base, [&](CongruenceReport r) {
        long need = ipow(pr.p, s + 2);
        if (need > pr.k_lam)
            throw inconclusive_error("thm3: p^{s+2} = " + std::to_string(need) + " exceeds k_lam = " +
                                     std::to_string(pr.k_lam));
        QSeries d = unit_ratio_f(ctx, s + 1) - unit_ratio_f(ctx, s);
        ValuationWitness w = ideal_pow_witness(d, s + 1 + extra);
        r.verdict = verdict_of(w.ok);
        r.witness = witness_json(w);
        return r;
    });
}

struct DwcorResult {
    QSeries eta;              // d_q F / F
    QSeries eta_tilde;        // d_q F / gamma(F)
    QSeries residual;         // recursion for eta
    QSeries residual_tilde;   // recursion for F d_q(1/F) = -eta_tilde
};

/// eta = d_q f/f + [p] lambda^{p-1} (gamma(f)/f) phi(eta) with f = F / phi(F), and the
/// analogous identity for F d_q(1/F) with g = phi(F)/F.
inline DwcorResult dwcor_identities(const Context& ctx) {
    const Prec& pr = ctx.prec();
    const QSeries& F = ctx.F();
    QSeries Finv = invert(F);
    QSeries phiF = frob(F);
    QSeries dF = dq(F);
    QSeries eta = mul(dF, Finv);
    QSeries eta_t = mul(dF, invert(gamma_act(F)));
    QSeries pn_lam = mul(qnum(pr, Rat(pr.p)), QSeries::monomial(pr, Rat(1), 0, static_cast<int>(pr.p - 1)));
    auto recursion = [&](const QSeries& u, const QSeries& target) {
        QSeries uinv = invert(u);
        return target - (mul(dq(u), uinv) + mul(mul(pn_lam, mul(gamma_act(u), uinv)), frob(target)));
    };
    QSeries f = mul(F, invert(phiF));
    QSeries g = mul(phiF, Finv);
    QSeries Fdinv = mul(F, dq(Finv));
    return {eta, eta_t, recursion(f, eta), recursion(g, Fdinv)};
}

/// Exact recursion residuals for eta and F d_q(1/F), plus localized membership of eta in
/// the ring generated by lambda and 1/F_1.
inline CongruenceReport eta_and_recursion_check(const Context& ctx) {
    CongruenceReport base{"dwcor", json::object(), "exact"};
    return guarded(base, [&](CongruenceReport r) {
        DwcorResult d = dwcor_identities(ctx);
        bool local = localized_membership(d.eta, truncated_F_s(ctx, 1), 1, 2);
        bool ok = d.residual.is_zero() && d.residual_tilde.is_zero() && local;
        r.verdict = verdict_of(ok);
        r.witness = json{{"recursion_zero", d.residual.is_zero()},
                         {"recursion_tilde_zero", d.residual_tilde.is_zero()},
                         {"localized", local},
                         {"lam_window", d.residual.lam_window()},
                         {"eps_window", d.residual.eps_window()}};
        return r;
    });
}

/// eta mod (p, eps) == h'/h as lambda-series.
inline CongruenceReport check_eta_hasse(const Context& ctx) {
    const Prec& pr = ctx.prec();
    CongruenceReport base{"eta_hasse", json::object(), "(p, eps)"};
    return guarded(base, [&](CongruenceReport r) {
        QSeries eta = mul(dq(ctx.F()), invert(ctx.F()));
        QSeries h = hasse_poly(pr);
        QSeries hd(pr);
        for (const auto& [i, j, c] : h.support())
            if (j > 0) hd.set(i, j - 1, *c * Rat(j));
        QSeries diff = eta - mul(hd, invert(h));
        ValuationWitness w = ideal_pow_witness(diff, 1);
        r.verdict = verdict_of(w.ok);
        r.witness = witness_json(w);
        return r;
    });
}

/// F_1 == h mod (p, eps).
inline CongruenceReport check_F1_hasse(const Context& ctx) {
    const Prec& pr = ctx.prec();
    CongruenceReport base{"F1_hasse", json{{"p", pr.p}}, "(p, eps)"};
    return guarded(base, [&](CongruenceReport r) {
        ValuationWitness w = ideal_pow_witness(truncated_F_s(ctx, 1) - hasse_poly(pr), 1);
        r.verdict = verdict_of(w.ok);
        r.witness = witness_json(w);
        return r;
    });
}

}  // namespace qdwork
