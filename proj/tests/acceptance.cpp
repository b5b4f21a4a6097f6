// Acceptance run: one PASS/FAIL line per criterion; nonzero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>

#include "qdwork/qdwork.hpp"

using namespace qdwork;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

bool suites_hold(const Prec& pr, const std::vector<std::string>& ids, int* negatives = nullptr) {
    RunConfig cfg;
    cfg.prec = pr;
    cfg.suites = ids;
    auto results = run_suites(cfg);
    bool ok = true;
    for (const auto& s : results) {
        if (s.verdict != Verdict::holds) {
            ok = false;
            std::cerr << "  " << s.id << ": " << to_string(s.verdict) << "\n";
            for (const auto& c : s.cases)
                if (!c.as_expected() || c.verdict == Verdict::inconclusive)
                    std::cerr << "    " << c.id << " " << to_string(c.verdict) << " " << c.witness.dump() << "\n";
        }
        if (negatives)
            for (const auto& c : s.cases)
                if (c.expect == "fails" && c.verdict == Verdict::fails) ++*negatives;
    }
    return ok;
}

Outcome c1_qnumber_laws() {
    for (long p : {3L, 5L, 7L})
        if (!suites_hold(make_prec(p, 6, 8, 40), {"qcalc.prop2"})) return {false, "p=" + std::to_string(p)};
    return {true, "p in {3,5,7}, m_eps=8, 50 samples per law"};
}

Outcome c2_solutions() {
    for (long p : {3L, 5L}) {
        Prec pr = make_prec(p, 6, 6, 64);
        auto ctx = context_for(pr);
        QSeries LF = apply_L(ctx->F());
        LogSeries LH = apply_L(ctx->H());
        LogSeries LR = apply_L(solution_H_remark(pr));
        bool windows = LF.lam_window() >= pr.k_lam - 2 && LH.part(0).lam_window() >= pr.k_lam - 2;
        if (!LF.is_zero() || !LH.is_zero() || !LR.is_zero() || !windows) return {false, "p=" + std::to_string(p)};
    }
    return {true, "L[F] = L[H] = L[H_alt] = 0 below lambda^62, p in {3,5}"};
}

Outcome c3_aglem_and_tails() {
    Prec pr = make_prec(3, 6, 6, 64);
    for (long n = 0; n < 20; ++n)
        if (!aglem_check(pr, n)) return {false, "aglem n=" + std::to_string(n)};
    if (!suites_hold(pr, {"hyper.LF"})) return {false, "tail formula"};
    return {true, "n < 20; r < 10"};
}

Outcome c4_wronskian() {
    Prec pr = make_prec(3, 6, 6, 64);
    auto ctx = context_for(pr);
    LogSeries W = wronskian(LogSeries(ctx->F()), ctx->H());
    bool log_free = W.degree() == 0;
    bool one = mul(lam_one_minus_lam(pr), W.part(0)).agrees_with(QSeries::one(pr));
    return {log_free && one, "log parts cancel, lambda(1-lambda) W = 1"};
}

Outcome c5_connection() {
    Prec pr = make_prec(3, 6, 6, 64);
    auto ctx = context_for(pr);
    QMat prod = one_plus_eps_lam(connection_P(pr)) * one_plus_eps_lam(connection_Pprime(pr));
    bool inv = is_zero(prod - identity_mat(pr));
    bool cl = agrees_with(connection_P(pr).map(reduce_mod_eps), classical_P(pr).map(reduce_mod_eps));
    bool hF = horizontality(LogSeries(ctx->F())).holds;
    bool hH = horizontality(ctx->H()).holds;
    bool neg = !horizontality(LogSeries(QSeries::lambda(pr))).holds;
    return {inv && cl && hF && hH && neg, "inverse pair, classical P, horizontal F and H, lambda rejected"};
}

Outcome c6_dwork() {
    int negatives = 0;
    Prec pr = make_prec(3, 6, 6, 81);
    bool ok = suites_hold(pr,
                          {"dwork.lemma11", "dwork.lemma12", "dwork.cor_i", "dwork.cor_ii", "dwork.thm2", "dwork.thm3",
                           "dwork.dwcor"},
                          &negatives);
    return {ok && negatives >= 3, "k_lam=81, negative controls failing as expected: " + std::to_string(negatives)};
}

Outcome c7_hasse() {
    for (long p : {3L, 5L, 7L}) {
        auto ctx = context_for(make_prec(p, 6, 6, 64));
        if (!check_F1_hasse(*ctx).holds()) return {false, "p=" + std::to_string(p)};
    }
    return {true, "p in {3,5,7}"};
}

Outcome c8_frobenius() {
    Prec small = make_prec(3, 6, 5, 40);
    auto cs = context_for(small);
    CDetermination cds = determine_c(*cs, QSeries(small));
    QSeries a = compute_a(*cs, cds.c);  // throws if the log part survives
    bool ell = a_pieces(*cs).ell_part.is_zero();
    bool integral = is_p_integral(a) && a.eps_window() == 5 && a.lam_window() == 40;

    Prec pr = make_prec(3, 6, 6, 64);
    auto ctx = context_for(pr);
    CDetermination cd = determine_c(*ctx, QSeries(pr));
    FrobMprime fm = build_phi_Mprime(*ctx, cd.c);
    bool b1 = cd.condition_after && cd.b1_effective_after == Rat(3, 2) * cd.b0;
    bool comm = is_zero(commutator(fm));
    bool fil = fil1_condition(fm).holds();
    return {ell && integral && b1 && comm && fil, "log part 0, a integral, b1 = (p/2) b0, commutator 0, Fil^1"};
}

Outcome c9_b1() {
    Prec pr = make_prec(3, 6, 6, 64);
    auto ctx = context_for(pr);
    CDetermination cd = determine_c(*ctx, QSeries(pr));
    FrobMprime fm = build_phi_Mprime(*ctx, cd.c);
    B1Solve s = solve_B1(fm);
    B1Solve twice = solve_B1(fm, 2 * s.iterations);
    bool integral = mat_p_integral(s.M);
    bool residual = is_zero(s.residual) && window(s.residual).second == pr.k_lam;
    bool stable = agrees_with(s.B1, twice.B1);
    return {integral && residual && stable, "iterations=" + std::to_string(s.iterations)};
}

Outcome c10_sigma() {
    Prec pr = make_prec(3, 6, 6, 64);
    auto ctx = context_for(pr);
    for (long l : {2L, 4L})
        if (!arithmetic_action_check(*ctx, l, 2).holds()) return {false, "l=" + std::to_string(l)};
    bool conj = sigma_conjugation_residual(QSeries::lambda(pr), 2).is_zero();
    return {conj, "l in {2, 1+p}, r <= 2, conjugation on lambda"};
}

Outcome c11_classical() {
    Prec pr = make_prec(3, 6, 6, 64);
    return {suites_hold(pr, {"classical.reduction"}), "F, P, unit-root factor, b, Wronskian at q = 1"};
}

}  // namespace

int main() {
    struct Criterion {
        int n;
        const char* name;
        std::function<Outcome()> fn;
        double budget_s;
    };
    const std::vector<Criterion> criteria = {
        {1, "q-number laws", c1_qnumber_laws, 10},
        {2, "solutions annihilated by L", c2_solutions, 60},
        {3, "aglem and tail formula", c3_aglem_and_tails, 0},
        {4, "q-Wronskian", c4_wronskian, 0},
        {5, "connection and horizontality", c5_connection, 0},
        {6, "Dwork congruence suite", c6_dwork, 300},
        {7, "F_1 and the Hasse polynomial", c7_hasse, 0},
        {8, "Frobenius structure", c8_frobenius, 0},
        {9, "B1 solve", c9_b1, 0},
        {10, "arithmetic sigma action", c10_sigma, 0},
        {11, "classical reduction", c11_classical, 0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.ok = false;
            o.detail += "; over time budget " + std::to_string(static_cast<int>(c.budget_s)) + " s";
        }
        if (!o.ok) ++failures;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.n << " " << c.name << ": " << o.detail << " ("
                  << static_cast<long>(secs * 1000) << " ms)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
