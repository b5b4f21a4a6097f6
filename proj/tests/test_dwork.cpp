#include <gtest/gtest.h>

#include "qdwork/qdwork.hpp"

using namespace qdwork;

namespace {

const Prec P3 = make_prec(3, 6, 6, 64);
const Prec P3W = make_prec(3, 6, 6, 81);
const Prec P5 = make_prec(5, 6, 6, 64);

// Classical A_{1/2}(n) = prod_{i<n} (i + 1/2)/(i + 1).
Rat classical_A(long n) {
    Rat r(1);
    for (long i = 0; i < n; ++i) r = r * Rat(2 * i + 1, 2 * i + 2);
    return r;
}

}  // namespace

TEST(ContextSequence, MatchesProductQuotient) {
    auto ctx = context_for(P3);
    for (long n = 0; n < 20; ++n) {
        QSeries direct = mul(c_theta(P3, Rat(1, 2), n), invert(c_theta(P3, Rat(1), n)));
        EXPECT_TRUE(ctx->A(n).agrees_with(direct)) << n;
        EXPECT_TRUE(ctx->a(n).agrees_with(mul(direct, direct)));
        EXPECT_EQ(reduce_mod_eps(ctx->A(n)).at(0, 0), classical_A(n));
    }
}

TEST(FactorialBlockCongruence, Examples) {
    auto ctx = context_for(P3);
    EXPECT_TRUE(check_lemma11(*ctx, Dyadic(1, 2), 0, 1, 1, 1).holds());
    EXPECT_TRUE(check_lemma11(*ctx, Dyadic(1), 0, 1, 1, 1).holds());
    EXPECT_EQ(theta_prime(3, Dyadic(1)).value() * Rat(3) - Rat(1), Rat(2));
    EXPECT_EQ(check_lemma11(*ctx, Dyadic(1, 2), 0, 1, 1, 1, 1).verdict, Verdict::fails);
    EXPECT_EQ(check_lemma11(*ctx, Dyadic(1, 2), 0, 1, 1, 1, 5).verdict, Verdict::inconclusive);
}

TEST(FactorialBlockCongruence, Grid) {
    auto ctx = context_for(P3);
    for (Dyadic th : {Dyadic(1, 2), Dyadic(1)})
        for (long a = 0; a < 3; ++a)
            for (long mu : {1L, 2L})
                for (long m : {1L, 2L})
                    for (int s : {1, 2})
                        EXPECT_TRUE(check_lemma11(*ctx, th, a, mu, m, s).holds())
                            << th.value() << " a=" << a << " mu=" << mu << " m=" << m << " s=" << s;
}

TEST(FactorialRatioCongruence, Examples) {
    auto ctx = context_for(P3);
    EXPECT_TRUE(check_lemma12(*ctx, Dyadic(1, 2), 1, 1).holds());
    EXPECT_TRUE(check_lemma12(*ctx, Dyadic(1, 2), 2, 1).holds());
    for (long m : {1L, 2L})
        for (int s : {1, 2}) {
            CongruenceReport r = check_lemma12(*ctx, Dyadic(1), m, s);
            EXPECT_TRUE(r.holds());
            EXPECT_EQ(r.witness.at("margin"), "inf");
        }
    EXPECT_EQ(check_lemma12(*ctx, Dyadic(1, 2), 1, 1, 1).verdict, Verdict::fails);
}

TEST(AHighDigitVanishing, Examples) {
    auto c3 = context_for(P3);
    CongruenceReport r = check_cor_i(*c3, 2, 1);
    EXPECT_TRUE(r.holds());
    EXPECT_EQ(r.modulus, "[3^2]_q");
    auto c5 = context_for(P5);
    CongruenceReport r5 = check_cor_i(*c5, 3, 0);
    EXPECT_TRUE(r5.holds());
    EXPECT_EQ(r5.modulus, "[5^1]_q");
    EXPECT_THROW(check_cor_i(*c3, 1, 0), std::invalid_argument);
    EXPECT_THROW(check_cor_i(*c5, 2, 0), std::invalid_argument);
    EXPECT_EQ(check_cor_i(*c3, 2, 1, 1).verdict, Verdict::fails);
}

TEST(AHighDigitVanishing, SweepWithClassicalShadow) {
    auto ctx = context_for(P3);
    for (long mu = 0; mu < 10; ++mu) {
        EXPECT_TRUE(check_cor_i(*ctx, 2, mu).holds()) << mu;
        // q = 1 shadow: v_p(A(a + mu p) / A(mu)) >= 1 + v_p(mu + 1/2)
        Rat ratio = classical_A(2 + 3 * mu) / classical_A(mu);
        long need = 1 + *vp(Rat(2 * mu + 1, 2), 3);
        EXPECT_GE(*vp(ratio, 3), need) << mu;
    }
}

TEST(ADigitShift, Examples) {
    auto ctx = context_for(P3);
    EXPECT_TRUE(check_cor_ii(*ctx, 4, 1, 0).holds());
    for (int s : {0, 1, 2}) {
        CongruenceReport r = check_cor_ii(*ctx, 5, 0, s);
        EXPECT_TRUE(r.holds());
        EXPECT_EQ(r.witness.at("margin"), "inf");
    }
    EXPECT_EQ(check_cor_ii(*ctx, 1, 1, 1, 1).verdict, Verdict::fails);
}

TEST(ADigitShift, Sweep) {
    auto ctx = context_for(P3);
    for (long n = 0; n < 27; ++n)
        for (long m = 0; m <= 2; ++m)
            for (int s = 0; s <= 2; ++s) EXPECT_TRUE(check_cor_ii(*ctx, n, m, s).holds()) << n << " " << m << " " << s;
}

TEST(TruncatedSumCongruence, Examples) {
    auto ctx = context_for(P3);
    BSeq a = bseq_a(ctx);
    EXPECT_TRUE(check_thm2(P3, a, 0, 0).holds());
    EXPECT_TRUE(check_thm2(P3, a, 1, 1).holds());
    CongruenceReport one = check_thm2(P3, bseq_one(P3), 0, 1);
    EXPECT_TRUE(one.holds());
    EXPECT_EQ(one.witness.at("margin"), "inf");
    EXPECT_EQ(check_thm2(P3, a, 1, 1, 1).verdict, Verdict::fails);
    Prec small = make_prec(3, 6, 6, 16);
    EXPECT_EQ(check_thm2(small, bseq_a(context_for(small)), 1, 1).verdict, Verdict::inconclusive);
}

TEST(TruncatedSumCongruence, FullGridAtWideWindow) {
    auto ctx = context_for(P3W);
    BSeq a = bseq_a(ctx);
    for (long m : {0L, 1L})
        for (int s : {0, 1}) EXPECT_TRUE(check_thm2(P3W, a, m, s).holds()) << m << " " << s;
}

TEST(TruncatedSumCongruence, HypothesesForASequence) {
    auto ctx = context_for(P3);
    BSeq a = bseq_a(ctx);
    for (long n = 0; n < 18; ++n)
        for (long m = 0; m <= 2; ++m)
            for (int s = 0; s <= 1; ++s) EXPECT_TRUE(thm2_hypothesis_a(P3, a, n, m, s)) << n << " " << m << " " << s;
    for (long n = 0; n < P3.k_lam; ++n) EXPECT_TRUE(is_p_integral(ctx->a(n)));
}

TEST(TruncatedSumCongruence, BlockIdentities) {
    auto ctx = context_for(P3);
    BSeq a = bseq_a(ctx);
    for (int s = 0; s <= 2; ++s)
        for (long N = 0; N <= 30; N += 3)
            for (long aa = 0; aa < 3; ++aa) {
                for (long m = 0; m <= 3; ++m) EXPECT_TRUE(dw24_holds(P3, a, aa, m, s, N));
                EXPECT_TRUE(dw25_holds(P3, a, aa, N / ipow(3, s), s, N));
                if (s >= 1) {
                    EXPECT_TRUE(dw26_holds(P3, a, aa, 0, s, N));
                }
            }
    for (int s = 0; s <= 2; ++s)
        for (long m = 0; m <= 2; ++m)
            for (long i = 0; i < ipow(3, s); ++i) EXPECT_TRUE(dw27_holds(P3, a, i, m, s)) << i << " " << m << " " << s;
}

TEST(UnitLimit, TruncatedF) {
    auto ctx = context_for(P3);
    EXPECT_TRUE(truncated_F_s(*ctx, 0).agrees_with(QSeries::one(P3)));
    EXPECT_EQ(truncated_F_s(*ctx, 2).lam_degree(), 8);
    EXPECT_EQ(truncated_F_s(*ctx, 2).support().size() > 0, true);
    int count = 0;
    QSeries F2 = truncated_F_s(*ctx, 2);
    for (int j = 0; j < P3.k_lam; ++j)
        if (!F2.lambda_coeff(j).is_zero()) ++count;
    EXPECT_EQ(count, 9);
    EXPECT_TRUE(in_ideal_pow(unit_ratio_f(*ctx, 0) - hasse_poly(P3), 1));
}

TEST(UnitLimit, Examples) {
    auto c27 = context_for(make_prec(3, 6, 6, 27));
    EXPECT_TRUE(unit_limit_check(*c27, 0).holds());
    EXPECT_TRUE(unit_limit_check(*c27, 1).holds());
    EXPECT_EQ(unit_limit_check(*c27, 2).verdict, Verdict::inconclusive);
    auto c81 = context_for(P3W);
    EXPECT_TRUE(unit_limit_check(*c81, 1).holds());
    EXPECT_EQ(unit_limit_check(*c81, 0, 1).verdict, Verdict::fails);
}

TEST(EtaRecursion, RecursionAndMembership) {
    auto ctx = context_for(P3);
    DwcorResult d = dwcor_identities(*ctx);
    EXPECT_TRUE(d.residual.is_zero());
    EXPECT_TRUE(d.residual_tilde.is_zero());
    EXPECT_TRUE(eta_and_recursion_check(*ctx).holds());
    EXPECT_TRUE(localized_membership(d.eta, truncated_F_s(*ctx, 1), 1, 2));
    EXPECT_TRUE(localized_membership(unit_ratio_f(*ctx, 1), truncated_F_s(*ctx, 1), 1, 2));
}

TEST(EtaRecursion, EtaClassicalReduction) {
    auto ctx = context_for(P3);
    DwcorResult d = dwcor_identities(*ctx);
    long k = P3.k_lam;
    classical::Series f = classical::hypergeometric_f(k);
    classical::Series eta = classical::mul(classical::deriv(f), classical::inv(f));
    eta.resize(k - 1);
    EXPECT_TRUE(reduce_mod_eps(d.eta).agrees_with(classical::to_qseries(P3, eta)));
    EXPECT_TRUE(check_eta_hasse(*ctx).holds());
}

TEST(Hasse, F1CongruentToHassePolynomial) {
    for (long p : {3L, 5L, 7L}) {
        auto ctx = context_for(make_prec(p, 6, 6, 64));
        EXPECT_TRUE(check_F1_hasse(*ctx).holds()) << p;
        // independent: binom(-1/2, n)^2 == binom((p-1)/2, n)^2 mod p for n < p
        for (long n = 0; n < p; ++n) {
            Rat diff = classical_A(n) * classical_A(n) - [&] {
                Rat b = gen_binom(Rat((p - 1) / 2), n);
                return b * b;
            }();
            EXPECT_TRUE(valuation_at_least(vp(diff, p), 1)) << p << " " << n;
        }
    }
}
