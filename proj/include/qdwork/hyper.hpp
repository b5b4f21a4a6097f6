#pragma once

// The q-hypergeometric operator L, its solutions F and H, the q-Wronskian and
// the connection matrices of the associated rank-2 module.

#include <string>
#include <vector>

#include "logseries.hpp"
#include "mat2.hpp"
#include "qcalc.hpp"
#include "qseries.hpp"

namespace qdwork {

/// alpha = 1 + [2]_q - 2 [1/2]_q.
inline QSeries alpha(const Prec& prec) {
    return QSeries::one(prec) + qnum(prec, Rat(2)) - qnum(prec, Rat(1, 2)) * Rat(2);
}

/// [1/2]_q^2
inline QSeries half_sq(const Prec& prec) {
    QSeries h = qnum(prec, Rat(1, 2));
    return mul(h, h);
}

/// a_n = A_{1/2}(n)^2 for n < count.
inline std::vector<QSeries> a_coeffs(const Prec& prec, long count) {
    std::vector<QSeries> a = a_theta_half_seq(prec, count);
    for (auto& x : a) x = mul(x, x);
    return a;
}

/// sum_{n in [lo, hi)} c_n lambda^n, clipped to the lambda window.
inline QSeries lambda_sum(const Prec& prec, const std::vector<QSeries>& c, long lo, long hi) {
    QSeries r(prec);
    for (long n = std::max(0L, lo); n < hi && n < prec.k_lam && n < static_cast<long>(c.size()); ++n)
        for (const auto& [i, j, v] : c[n].support())
            if (j == 0) r.set(i, static_cast<int>(n), *v);
    return r;
}

/// F = sum a_n lambda^n.
inline QSeries solution_F(const Prec& prec) { return lambda_sum(prec, a_coeffs(prec, prec.k_lam), 0, prec.k_lam); }

/// F_{>=r} = sum_{n>=r} a_n lambda^n.
inline QSeries solution_F_tail(const Prec& prec, long r) {
    return lambda_sum(prec, a_coeffs(prec, prec.k_lam), r, prec.k_lam);
}

/// log_q(1 - lambda) = -sum_{n>=1} lambda^n / [n]_q.
inline QSeries log_one_minus(const Prec& prec) {
    QSeries r(prec);
    for (int n = 1; n < prec.k_lam; ++n) {
        QSeries c = -invert(qnum(prec, Rat(n)));
        for (const auto& [i, j, v] : c.support()) r.set(i, n, *v);
    }
    return r;
}

/// sum_{n>=1} a_n lambda^n sum_{i<=n} w_i.
inline QSeries weighted_tail(const Prec& prec, const std::vector<QSeries>& a, const std::vector<QSeries>& w) {
    QSeries r(prec);
    QSeries acc(prec);
    for (int n = 1; n < prec.k_lam; ++n) {
        acc += w[n];
        QSeries c = mul(a[n], acc);
        for (const auto& [i, j, v] : c.support()) r.set(i, n, *v);
    }
    return r;
}

/// G = G1 + G2 = sum_{n>=1} a_n lambda^n sum_{i<=n} (2/[i]_q + eps).
inline QSeries solution_H_correction(const Prec& prec, const std::vector<QSeries>& a) {
    std::vector<QSeries> w(prec.k_lam, QSeries(prec));
    for (int i = 1; i < prec.k_lam; ++i) w[i] = invert(qnum(prec, Rat(i))) * Rat(2) + QSeries::eps(prec);
    return weighted_tail(prec, a, w);
}

/// H = F l - F log_q(1 - lambda) - G.
inline LogSeries solution_H(const Prec& prec) {
    auto a = a_coeffs(prec, prec.k_lam);
    QSeries F = lambda_sum(prec, a, 0, prec.k_lam);
    LogSeries H = LogSeries(F) * LogSeries::ell(prec);
    H -= LogSeries(mul(F, log_one_minus(prec)));
    H -= LogSeries(solution_H_correction(prec, a));
    return H;
}

/// Alternative form: H = F l + sum a_n lambda^n sum_{i<=n} (2/[i-1/2]_q - 2/[i]_q).
inline LogSeries solution_H_remark(const Prec& prec) {
    auto a = a_coeffs(prec, prec.k_lam);
    QSeries F = lambda_sum(prec, a, 0, prec.k_lam);
    std::vector<QSeries> w(prec.k_lam, QSeries(prec));
    for (int i = 1; i < prec.k_lam; ++i)
        w[i] = (invert(qnum(prec, Rat(2 * i - 1, 2))) - invert(qnum(prec, Rat(i)))) * Rat(2);
    return LogSeries(F) * LogSeries::ell(prec) + LogSeries(weighted_tail(prec, a, w));
}

/// q lambda (1 - q lambda)
inline QSeries q_lam_one_minus_q_lam(const Prec& prec) {
    QSeries ql = mul(QSeries::q(prec), QSeries::lambda(prec));
    return mul(ql, QSeries::one(prec) - ql);
}

/// lambda (1 - lambda)
inline QSeries lam_one_minus_lam(const Prec& prec) {
    QSeries l = QSeries::lambda(prec);
    return l - mul(l, l);
}

/// 1 / (lambda (1 - lambda))
inline QSeries inv_lam_one_minus_lam(const Prec& prec) { return invert_laurent(lam_one_minus_lam(prec)); }

/// 1 / (1 - lambda)
inline QSeries inv_one_minus_lam(const Prec& prec) { return invert(QSeries::one(prec) - QSeries::lambda(prec)); }

/// L[f] = q lambda (1 - q lambda) d_q^2 f + (1 - alpha lambda) d_q f - [1/2]_q^2 f.
inline LogSeries apply_L(const LogSeries& f) {
    const Prec& pr = f.prec();
    LogSeries d1 = dq(f);
    LogSeries d2 = dq(d1);
    QSeries c1 = QSeries::one(pr) - mul(alpha(pr), QSeries::lambda(pr));
    return q_lam_one_minus_q_lam(pr) * d2 + c1 * d1 - half_sq(pr) * f;
}
inline QSeries apply_L(const QSeries& f) { return apply_L(LogSeries(f)).part(0); }

/// Coefficient form of L on a power series: [n+1]^2 c_{n+1} - [n+1/2]^2 c_n at lambda^n.
inline QSeries apply_L_coeffwise(const QSeries& y) {
    const Prec& pr = y.prec();
    QSeries r(pr);
    int lw = std::min(y.lam_window() - 1, pr.k_lam);
    r.shrink_window(y.eps_window(), std::max(lw, pr.lam_low));
    for (int n = 0; n < lw; ++n) {
        QSeries a = qnum(pr, Rat(n + 1));
        QSeries b = qnum(pr, Rat(2 * n + 1, 2));
        QSeries cn1 = y.lambda_coeff(n + 1), cn = y.lambda_coeff(n);
        QSeries v = mul(mul(a, a), cn1) - mul(mul(b, b), cn);
        for (const auto& [i, j, c] : v.support()) r.set(i, n, *c);
    }
    return r;
}

/// Both sides of the aglem identity at n:
/// sum_{m<=n} (2(q - q^{1/2})[m] - (2[1/2] - 1)) a_m q^{n-m}  and  eps [n+1]^2 a_{n+1}.
inline std::pair<QSeries, QSeries> aglem_sides(const Prec& prec, long n) {
    auto a = a_coeffs(prec, n + 2);
    QSeries q = QSeries::q(prec);
    QSeries k = (q - qpow(prec, Rat(1, 2))) * Rat(2);
    QSeries h = qnum(prec, Rat(1, 2)) * Rat(2) - QSeries::one(prec);
    QSeries lhs(prec);
    for (long m = 0; m <= n; ++m) {
        QSeries term = mul(k, qnum(prec, Rat(m))) - h;
        lhs += mul(mul(term, a[m]), qpow(prec, Rat(n - m)));
    }
    QSeries n1 = qnum(prec, Rat(n + 1));
    QSeries rhs = mul(QSeries::eps(prec), mul(mul(n1, n1), a[n + 1]));
    return {lhs, rhs};
}
inline bool aglem_check(const Prec& prec, long n) {
    auto [l, r] = aglem_sides(prec, n);
    return l == r;
}

/// F d_q H - H d_q F.
inline LogSeries wronskian(const LogSeries& F, const LogSeries& H) { return F * dq(H) - H * dq(F); }

/// Connection matrix P (nabla_q(e1, e2) = (e1, e2) P dlambda).
inline QMat connection_P(const Prec& prec) {
    QSeries lam = QSeries::lambda(prec);
    QSeries e = QSeries::eps(prec);
    QSeries s = inv_lam_one_minus_lam(prec);
    QSeries h2 = half_sq(prec);
    QMat raw{QSeries::one(prec) - mul(qnum(prec, Rat(2)), lam), -h2, -q_lam_one_minus_q_lam(prec),
             mul(mul(h2, e), lam)};
    return s * raw;
}

/// P' with d_q(f1, f2)^T = P' (f1, f2)^T for horizontal sections.
inline QMat connection_Pprime(const Prec& prec) {
    QSeries lam = QSeries::lambda(prec);
    QSeries s = invert_laurent(q_lam_one_minus_q_lam(prec));
    QMat raw{mul(alpha(prec), lam) - QSeries::one(prec), half_sq(prec), q_lam_one_minus_q_lam(prec), QSeries(prec)};
    return s * raw;
}

/// 1 + eps lambda X
inline QMat one_plus_eps_lam(const QMat& X) {
    const Prec& pr = X.a.prec();
    QSeries el = QSeries::monomial(pr, Rat(1), 1, 1);
    return identity_mat(pr) + el * X;
}

/// The q = 1 matrix (1/(lambda(1-lambda))) [[1 - 2 lambda, -1/4], [-lambda(1-lambda), 0]].
inline QMat classical_P(const Prec& prec) {
    QSeries lam = QSeries::lambda(prec);
    QSeries s = inv_lam_one_minus_lam(prec);
    QMat raw{QSeries::one(prec) - lam * Rat(2), QSeries::constant(prec, Rat(-1, 4)), -lam_one_minus_lam(prec),
             QSeries(prec)};
    return s * raw;
}

template <typename M>
M gamma_mat(const M& m, long k = 1) {
    return m.map([k](const auto& x) { return gamma_act(x, k); });
}
template <typename M>
M frob_mat(const M& m) {
    return m.map([](const auto& x) { return frob(x); });
}
template <typename M>
M dq_mat(const M& m) {
    return m.map([](const auto& x) { return dq(x); });
}

struct HorizontalityResult {
    bool holds;
    LogSeries residual1, residual2;  // (1 + eps lambda P) gamma(f) - f
};

/// Checks nabla_q(e1 f1 + e2 f2) = 0 with f1 = d_q f2.
inline HorizontalityResult horizontality(const LogSeries& f2) {
    const Prec& pr = f2.prec();
    LogSeries f1 = dq(f2);
    QMat m = one_plus_eps_lam(connection_P(pr));
    auto [u, v] = m.apply(gamma_act(f1), gamma_act(f2));
    LogSeries r1 = u - f1, r2 = v - f2;
    return {r1.is_zero() && r2.is_zero(), r1, r2};
}

/// The d_q(f) = P' f form of the same condition.
inline bool horizontality_Pprime(const LogSeries& f2) {
    const Prec& pr = f2.prec();
    LogSeries f1 = dq(f2);
    auto [u, v] = connection_Pprime(pr).apply(f1, f2);
    return (dq(f1) - u).is_zero() && (dq(f2) - v).is_zero();
}

/// Presentation of the connection in the basis (e1', e2) with e1' = e1 / (lambda(1-lambda)).
struct ModulePresentation {
    std::string basis1;
    std::string basis2;
    QMat nabla;    // nabla_q(e1', e2) = (e1', e2) nabla dlambda
    QMat gamma_M;  // gamma_M = 1 + eps lambda nabla
    std::string fil1;
};

/// Gauge change N = G^{-1} (d_q G + P gamma(G)) with G = diag(1/(lambda(1-lambda)), 1).
inline ModulePresentation basis_change_Mprime(const Prec& prec) {
    QMat G = diag_mat(inv_lam_one_minus_lam(prec), QSeries::one(prec));
    QMat Ginv = diag_mat(lam_one_minus_lam(prec), QSeries::one(prec));
    QMat N = Ginv * (dq_mat(G) + connection_P(prec) * gamma_mat(G));
    return ModulePresentation{"e1'", "e2", N, one_plus_eps_lam(N), "Fil^1 = R' e1' + eps R' e2"};
}

/// The displayed matrix [[0, -[1/2]^2], [-1/(lambda(1-lambda)), [1/2]^2 eps/(1-lambda)]].
inline QMat expected_Mprime_nabla(const Prec& prec) {
    QSeries h2 = half_sq(prec);
    return {QSeries(prec), -h2, -inv_lam_one_minus_lam(prec), mul(mul(h2, QSeries::eps(prec)), inv_one_minus_lam(prec))};
}

/// lambda(1-lambda)(F d_q X - X d_q F)/F - 1/F: zero for X = H.
inline LogSeries identity_1F_residual(const QSeries& F, const LogSeries& X) {
    const Prec& pr = F.prec();
    QSeries Finv = invert(F);
    LogSeries w = wronskian(LogSeries(F), X);
    return lam_one_minus_lam(pr) * w * Finv - LogSeries(Finv);
}

}  // namespace qdwork
