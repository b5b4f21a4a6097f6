#pragma once

// Versioned manifest of verification suites and a parallel, order-stable runner.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "classical.hpp"
#include "context.hpp"
#include "dwork.hpp"
#include "frobstruct.hpp"
#include "hyper.hpp"
#include "json_io.hpp"
#include "report.hpp"
#include "sampling.hpp"

namespace qdwork {

inline constexpr const char* kManifestVersion = "1";

/// One case of a suite. expect is "holds", or "fails" for negative controls.
struct CaseSpec {
    std::string id;
    json params;
    std::function<CongruenceReport()> run;
    std::string expect = "holds";
};

struct CaseResult {
    std::string id;
    json params;
    Verdict verdict = Verdict::inconclusive;
    json witness = json::object();
    std::string expect = "holds";
    double wall_ms = 0;

    bool as_expected() const { return to_string(verdict) == expect; }
};

struct SuiteResult {
    std::string id;
    std::vector<CaseResult> cases;
    Verdict verdict = Verdict::holds;
    double wall_ms = 0;
};

struct RunConfig {
    Prec prec;
    std::vector<std::string> suites{"all"};
    int jobs = 1;
    bool allow_inconclusive = false;
};

namespace suites_detail {

inline std::string case_id(const std::string& claim, const json& params) {
    std::string s = claim;
    if (!params.empty()) {
        s += "[";
        bool first = true;
        for (const auto& [k, v] : params.items()) {
            if (!first) s += ",";
            first = false;
            s += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        s += "]";
    }
    return s;
}

inline CaseSpec make_case(const std::string& claim, json params, std::function<CongruenceReport()> fn,
                          std::string expect = "holds") {
    std::string id = case_id(claim, params);
    return {id, std::move(params), std::move(fn), std::move(expect)};
}

// A boolean check with a witness object.
inline CaseSpec bool_case(const std::string& claim, json params, std::function<std::pair<bool, json>()> fn,
                          std::string expect = "holds") {
    json p = params;
    return make_case(
        claim, params,
        [claim, p, fn] {
            CongruenceReport r{claim, p, "exact"};
            return guarded(r, [&](CongruenceReport rep) {
                auto [ok, w] = fn();
                rep.verdict = verdict_of(ok);
                rep.witness = std::move(w);
                return rep;
            });
        },
        std::move(expect));
}

inline json window_json(const QSeries& f) { return json{{"eps_window", f.eps_window()}, {"lam_window", f.lam_window()}}; }

// Lazily built Frobenius data shared by the frob.* suites.
struct FrobBundle {
    CDetermination cdet;
    FrobMprime fm;
    B1Solve b1;
};

inline std::shared_ptr<const FrobBundle> frob_bundle(std::shared_ptr<const Context> ctx) {
    static std::mutex mu;
    static std::map<const Context*, std::shared_ptr<std::once_flag>> flags;
    static std::map<const Context*, std::shared_ptr<const FrobBundle>> cache;
    std::shared_ptr<std::once_flag> flag;
    {
        std::lock_guard lock(mu);
        auto& f = flags[ctx.get()];
        if (!f) f = std::make_shared<std::once_flag>();
        flag = f;
    }
    std::call_once(*flag, [&] {
        CDetermination cd = determine_c(*ctx, QSeries(ctx->prec()));
        FrobMprime fm = build_phi_Mprime(*ctx, cd.c);
        B1Solve b1 = solve_B1(fm);
        auto b = std::make_shared<const FrobBundle>(FrobBundle{cd, fm, b1});
        std::lock_guard lock(mu);
        cache[ctx.get()] = b;
    });
    std::lock_guard lock(mu);
    return cache.at(ctx.get());
}

inline bool mats_equal(const QMat& x, const QMat& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

inline json mat_const_json(const QMat& m) {
    auto c = [](const QSeries& x) { return x.at(0, 0).str(); };
    return json::array({json::array({c(m.a), c(m.b)}), json::array({c(m.c), c(m.d)})});
}

// ---- qcalc ---------------------------------------------------------------

inline std::vector<CaseSpec> suite_prop2(const Prec& pr) {
    std::vector<CaseSpec> out;
    constexpr int samples = 50;
    out.push_back(bool_case("add_law", {{"samples", samples}}, [pr] {
        Sampler s(101);
        for (int t = 0; t < samples; ++t) {
            Dyadic a = s.dyadic(), b = s.dyadic();
            QSeries lhs = qnum(pr, a + b);
            QSeries rhs = qnum(pr, a) + mul(qpow(pr, a), qnum(pr, b));
            if (!(lhs == rhs)) return std::pair{false, json{{"a", a.value().str()}, {"b", b.value().str()}}};
        }
        return std::pair{true, json{{"checked", 50}}};
    }));
    out.push_back(bool_case("frob_law", {{"samples", samples}}, [pr] {
        Sampler s(102);
        QSeries pn = qnum(pr, Rat(pr.p));
        for (int t = 0; t < samples; ++t) {
            Dyadic a = s.dyadic();
            if (!(qnum(pr, Rat(pr.p) * a.value()) == mul(pn, frob(qnum(pr, a)))))
                return std::pair{false, json{{"a", a.value().str()}}};
        }
        return std::pair{true, json{{"checked", 50}}};
    }));
    int nmax = std::min(pr.n_p, pr.m_eps);
    for (int n = 1; n <= nmax; ++n)
        out.push_back(make_case("ppow_in_ideal", {{"n", n}}, [pr, n] {
            CongruenceReport r{"ppow_in_ideal", json{{"n", n}}, "(p, eps)^" + std::to_string(n)};
            return guarded(r, [&](CongruenceReport rep) {
                ValuationWitness w = ideal_pow_witness(qnum_ppow(pr, n), n);
                rep.verdict = verdict_of(w.ok);
                rep.witness = witness_json(w);
                return rep;
            });
        }));
    out.push_back(make_case(
        "ppow_in_ideal", {{"n", 2}, {"of", "p^1"}},
        [pr] {
            CongruenceReport r{"ppow_in_ideal", json{{"n", 2}, {"of", "p^1"}}, "(p, eps)^2"};
            return guarded(r, [&](CongruenceReport rep) {
                ValuationWitness w = ideal_pow_witness(qnum_ppow(pr, 1), 2);
                rep.verdict = verdict_of(w.ok);
                rep.witness = witness_json(w);
                return rep;
            });
        },
        "fails"));
    int max_lam = std::max(2, pr.k_lam / static_cast<int>(pr.p));
    out.push_back(bool_case("gamma_frob_commute", {{"samples", samples}}, [pr, max_lam] {
        Sampler s(104);
        for (int t = 0; t < samples; ++t) {
            QSeries f = s.series(pr, 6, pr.m_eps, max_lam);
            if (!(gamma_act(frob(f)) == frob(gamma_act(f)))) return std::pair{false, json{{"sample", t}}};
            LogSeries g = LogSeries(f) * LogSeries::ell(pr);
            if (!(gamma_act(frob(g)) - frob(gamma_act(g))).is_zero())
                return std::pair{false, json{{"sample", t}, {"log", true}}};
        }
        return std::pair{true, json{{"checked", 50}}};
    }));
    out.push_back(bool_case("dq_frob", {{"samples", samples}}, [pr, max_lam] {
        Sampler s(105);
        QSeries pl = mul(qnum(pr, Rat(pr.p)), QSeries::monomial(pr, Rat(1), 0, static_cast<int>(pr.p - 1)));
        for (int t = 0; t < samples; ++t) {
            QSeries f = s.series(pr, 6, pr.m_eps, max_lam);
            if (!dq(frob(f)).agrees_with(mul(pl, frob(dq(f))))) return std::pair{false, json{{"sample", t}}};
        }
        return std::pair{true, json{{"checked", 50}}};
    }));
    return out;
}

// ---- hyper ---------------------------------------------------------------

inline std::vector<CaseSpec> suite_LF(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("L_of_F", json::object(), [ctx] {
        QSeries r = apply_L(ctx->F());
        return std::pair{r.is_zero(), window_json(r)};
    }));
    for (long r = 1; r < 10; ++r)
        out.push_back(bool_case("L_of_F_tail", {{"r", r}}, [ctx, r] {
            const Prec& pr = ctx->prec();
            QSeries lhs = apply_L(lambda_sum(pr, ctx->a_list(pr.k_lam), r, pr.k_lam));
            QSeries qr = qnum(pr, Rat(r));
            QSeries rhs = mul(mul(mul(qr, qr), ctx->a(r)), QSeries::monomial(pr, Rat(1), 0, static_cast<int>(r - 1)));
            return std::pair{lhs.agrees_with(rhs), window_json(lhs)};
        }));
    return out;
}

inline std::vector<CaseSpec> suite_LH(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("L_of_H", json::object(), [ctx] {
        LogSeries r = apply_L(ctx->H());
        return std::pair{r.is_zero(), json{{"log_degree_of_H", ctx->H().degree()}}};
    }));
    out.push_back(bool_case("L_of_H_alternative", json::object(), [ctx] {
        LogSeries h2 = solution_H_remark(ctx->prec());
        bool a = apply_L(h2).is_zero();
        bool b = apply_L(ctx->H() - h2).is_zero();
        return std::pair{a && b, json{{"alternative", a}, {"difference", b}}};
    }));
    out.push_back(bool_case("H_log_part_is_F", json::object(), [ctx] {
        const LogSeries& H = ctx->H();
        return std::pair{H.degree() == 1 && H.part(1) == ctx->F(), json{{"degree", H.degree()}}};
    }));
    return out;
}

inline std::vector<CaseSpec> suite_aglem(const Prec& pr) {
    std::vector<CaseSpec> out;
    long nmax = std::min<long>(20, pr.k_lam - 1);
    for (long n = 0; n < nmax; ++n)
        out.push_back(bool_case("aglem", {{"n", n}}, [pr, n] { return std::pair{aglem_check(pr, n), json::object()}; }));
    return out;
}

inline std::vector<CaseSpec> suite_wronskian(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("wronskian", json::object(), [ctx] {
        const Prec& pr = ctx->prec();
        LogSeries W = wronskian(LogSeries(ctx->F()), ctx->H());
        bool log_free = W.degree() == 0 && W.part(1).is_zero();
        QSeries w = mul(lam_one_minus_lam(pr), W.part(0));
        bool one = w.agrees_with(QSeries::one(pr));
        return std::pair{log_free && one, json{{"log_free", log_free}, {"lam_window", w.lam_window()}}};
    }));
    out.push_back(bool_case("identity_1F", {{"X", "H"}}, [ctx] {
        return std::pair{identity_1F_residual(ctx->F(), ctx->H()).is_zero(), json::object()};
    }));
    out.push_back(bool_case(
        "identity_1F", {{"X", "F"}},
        [ctx] { return std::pair{identity_1F_residual(ctx->F(), LogSeries(ctx->F())).is_zero(), json::object()}; },
        "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_connection(const Prec& pr) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("inverse_pair", json::object(), [pr] {
        QMat prod = one_plus_eps_lam(connection_P(pr)) * one_plus_eps_lam(connection_Pprime(pr));
        QMat diff = prod - identity_mat(pr);
        return std::pair{is_zero(diff), json{{"lam_window", window(diff).second}}};
    }));
    out.push_back(bool_case("P_mod_eps", json::object(), [pr] {
        // lambda(1-lambda) P mod eps against [[1 - 2 lambda, -1/4], [-lambda(1-lambda), 0]]
        long k = pr.k_lam;
        QMat red = connection_P(pr).map([&](const QSeries& x) { return reduce_mod_eps(mul(lam_one_minus_lam(pr), x)); });
        classical::Series a = classical::zero(k), b = classical::zero(k), c = classical::zero(k), d = classical::zero(k);
        a[0] = Rat(1);
        a[1] = Rat(-2);
        b[0] = Rat(-1, 4);
        c[1] = Rat(-1);
        c[2] = Rat(1);
        auto same = [&](const QSeries& x, const classical::Series& y) {
            return x.agrees_with(classical::to_qseries(pr, y));
        };
        bool ok = same(red.a, a) && same(red.b, b) && same(red.c, c) && same(red.d, d);
        return std::pair{ok, json::object()};
    }));
    out.push_back(bool_case("Mprime_presentation", json::object(), [pr] {
        ModulePresentation m = basis_change_Mprime(pr);
        bool nab = agrees_with(m.nabla, expected_Mprime_nabla(pr));
        bool gam = is_zero(eps_slice_mat(m.gamma_M, 0) - eps_slice_mat(identity_mat(pr), 0));
        return std::pair{nab && gam, json{{"nabla", nab}, {"gamma_mod_eps_identity", gam}, {"fil1", m.fil1}}};
    }));
    return out;
}

inline std::vector<CaseSpec> suite_horizontality(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("horizontal", {{"f2", "F"}}, [ctx] {
        LogSeries f(ctx->F());
        return std::pair{horizontality(f).holds && horizontality_Pprime(f), json::object()};
    }));
    out.push_back(bool_case("horizontal", {{"f2", "H"}}, [ctx] {
        return std::pair{horizontality(ctx->H()).holds && horizontality_Pprime(ctx->H()), json::object()};
    }));
    out.push_back(bool_case(
        "horizontal", {{"f2", "lambda"}},
        [ctx] { return std::pair{horizontality(LogSeries(QSeries::lambda(ctx->prec()))).holds, json::object()}; },
        "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_hasse(std::shared_ptr<const Context> ctx) {
    return {make_case("F1_hasse", json::object(), [ctx] { return check_F1_hasse(*ctx); }),
            make_case("eta_hasse", json::object(), [ctx] { return check_eta_hasse(*ctx); })};
}

inline std::vector<CaseSpec> suite_classical(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    const Prec& pr = ctx->prec();
    long k = pr.k_lam;
    out.push_back(bool_case("F_mod_eps", json::object(), [ctx, k] {
        bool ok = reduce_mod_eps(ctx->F()) == classical::to_qseries(ctx->prec(), classical::hypergeometric_f(k));
        return std::pair{ok, json::object()};
    }));
    out.push_back(bool_case("P_mod_eps", json::object(), [pr] {
        return std::pair{agrees_with(connection_P(pr).map(reduce_mod_eps), classical_P(pr).map(reduce_mod_eps)),
                         json::object()};
    }));
    out.push_back(bool_case("unit_root_factor_mod_eps", json::object(), [ctx, k] {
        UnitRootData u = build_unit_root(*ctx);
        const Prec& p = ctx->prec();
        bool ok = reduce_mod_eps(u.phi_ratio) == classical::to_qseries(p, classical::unit_root_factor(p.p, k));
        return std::pair{ok, json{{"sign", u.sign}}};
    }));
    out.push_back(bool_case("b_mod_eps", json::object(), [ctx, k] {
        const Prec& p = ctx->prec();
        QSeries a = compute_a(*ctx, QSeries(p));
        bool ok = reduce_mod_eps(a).agrees_with(classical::to_qseries(p, classical::b_series(p.p, k)));
        return std::pair{ok, json{{"b0", a.at(0, 0).str()}}};
    }));
    out.push_back(bool_case("wronskian_mod_eps", json::object(), [ctx, k] {
        const Prec& p = ctx->prec();
        classical::Series w = classical::wronskian_times_lam_one_minus_lam(k);
        classical::Series one = classical::zero(k);
        one[0] = Rat(1);
        w.resize(k - 1);
        one.resize(k - 1);
        QSeries W = mul(lam_one_minus_lam(p), wronskian(LogSeries(ctx->F()), ctx->H()).part(0));
        bool ok = w == one && reduce_mod_eps(W).agrees_with(classical::to_qseries(p, one));
        return std::pair{ok, json::object()};
    }));
    return out;
}

// ---- dwork ---------------------------------------------------------------

inline std::vector<CaseSpec> suite_lemma11(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    long p = ctx->prec().p;
    for (Dyadic th : {Dyadic(1, 2), Dyadic(1)})
        for (long a = 0; a < p; ++a)
            for (long mu : {1L, 2L})
                for (long m : {1L, 2L})
                    for (int s : {1, 2}) {
                        json params{{"theta", th.value().str()}, {"a", a}, {"mu", mu}, {"m", m}, {"s", s}};
                        out.push_back(make_case("lemma11", params,
                                                [ctx, th, a, mu, m, s] { return check_lemma11(*ctx, th, a, mu, m, s); }));
                    }
    json neg{{"theta", "1/2"}, {"a", 0}, {"mu", 1}, {"m", 1}, {"s", 1}, {"extra", 1}};
    out.push_back(make_case("lemma11", neg, [ctx] { return check_lemma11(*ctx, Dyadic(1, 2), 0, 1, 1, 1, 1); }, "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_lemma12(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    for (Dyadic th : {Dyadic(1, 2), Dyadic(1)})
        for (long m : {1L, 2L})
            for (int s : {1, 2})
                out.push_back(make_case("lemma12", {{"theta", th.value().str()}, {"m", m}, {"s", s}},
                                        [ctx, th, m, s] { return check_lemma12(*ctx, th, m, s); }));
    out.push_back(make_case("lemma12", {{"theta", "1/2"}, {"m", 1}, {"s", 1}, {"extra", 1}},
                            [ctx] { return check_lemma12(*ctx, Dyadic(1, 2), 1, 1, 1); }, "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_cor_i(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    long p = ctx->prec().p;
    for (long a = (p + 1) / 2; a < p; ++a)
        for (long mu = 0; mu < 10; ++mu)
            out.push_back(make_case("cor_i", {{"a", a}, {"mu", mu}}, [ctx, a, mu] { return check_cor_i(*ctx, a, mu); }));
    long a0 = (p + 1) / 2;
    out.push_back(make_case("cor_i", {{"a", a0}, {"mu", 1}, {"extra", 1}},
                            [ctx, a0] { return check_cor_i(*ctx, a0, 1, 1); }, "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_cor_ii(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    long p = ctx->prec().p;
    for (long n = 0; n < 3 * p * p; ++n)
        for (long m = 0; m <= 2; ++m)
            for (int s = 0; s <= 2; ++s)
                out.push_back(make_case("cor_ii", {{"n", n}, {"m", m}, {"s", s}},
                                        [ctx, n, m, s] { return check_cor_ii(*ctx, n, m, s); }));
    out.push_back(make_case("cor_ii", {{"n", 1}, {"m", 1}, {"s", 1}, {"extra", 1}},
                            [ctx] { return check_cor_ii(*ctx, 1, 1, 1, 1); }, "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_thm2(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    const Prec& pr = ctx->prec();
    long p = pr.p;
    BSeq B = bseq_a(ctx);
    for (long m : {0L, 1L})
        for (int s : {0, 1})
            out.push_back(make_case("thm2", {{"B", "a_n"}, {"m", m}, {"s", s}},
                                    [pr, B, m, s] { return check_thm2(pr, B, m, s); }));
    out.push_back(make_case("thm2", {{"B", "1"}, {"m", 0}, {"s", 1}},
                            [pr] { return check_thm2(pr, bseq_one(pr), 0, 1); }));
    out.push_back(make_case("thm2", {{"B", "a_n"}, {"m", 1}, {"s", 1}, {"extra", 1}},
                            [pr, B] { return check_thm2(pr, B, 1, 1, 1); }, "fails"));
    out.push_back(bool_case("hypothesis_a", {{"n_below", 2 * p * p}, {"m_max", 2}, {"s_max", 1}}, [pr, B, p] {
        for (long n = 0; n < 2 * p * p; ++n)
            for (long m = 0; m <= 2; ++m)
                for (int s = 0; s <= 1; ++s)
                    if (!thm2_hypothesis_a(pr, B, n, m, s))
                        return std::pair{false, json{{"n", n}, {"m", m}, {"s", s}}};
        return std::pair{true, json::object()};
    }));
    out.push_back(bool_case("hypothesis_c", {{"n_below", pr.k_lam}}, [ctx, pr] {
        for (long n = 0; n < pr.k_lam; ++n)
            if (!is_p_integral(ctx->a(n))) return std::pair{false, json{{"n", n}}};
        return std::pair{true, json::object()};
    }));
    const long Nmax = 30;
    out.push_back(bool_case("dw24", {{"s_max", 2}, {"N_max", Nmax}}, [pr, B, p] {
        for (long a = 0; a < p; ++a)
            for (int s = 0; s <= 2; ++s)
                for (long m = 1; m <= 2; ++m)
                    for (long N = 0; N < std::min(m * ipow(p, s), Nmax + 1); ++N)
                        if (!dw24_holds(pr, B, a, m, s, N))
                            return std::pair{false, json{{"a", a}, {"m", m}, {"s", s}, {"N", N}}};
        return std::pair{true, json::object()};
    }));
    out.push_back(bool_case("dw25", {{"s_max", 2}, {"N_max", Nmax}}, [pr, B, p] {
        for (long a = 0; a < p; ++a)
            for (int s = 0; s <= 2; ++s)
                for (long N = 0; N <= Nmax; N += 3) {
                    long T = N / ipow(p, s);
                    if (!dw25_holds(pr, B, a, T, s, N))
                        return std::pair{false, json{{"a", a}, {"T", T}, {"s", s}, {"N", N}}};
                }
        return std::pair{true, json::object()};
    }));
    out.push_back(bool_case("dw26", {{"s_max", 2}, {"N_max", Nmax}}, [pr, B, p] {
        for (long a = 0; a < p; ++a)
            for (int s = 1; s <= 2; ++s)
                for (long m = 0; m <= 1; ++m)
                    for (long N = 0; N <= Nmax; N += 5)
                        if (!dw26_holds(pr, B, a, m, s, N))
                            return std::pair{false, json{{"a", a}, {"m", m}, {"s", s}, {"N", N}}};
        return std::pair{true, json::object()};
    }));
    out.push_back(bool_case("dw27", {{"s_max", 2}, {"m_max", 2}}, [pr, B, p] {
        for (int s = 0; s <= 2; ++s)
            for (long m = 0; m <= 2; ++m)
                for (long i = 0; i < ipow(p, s); ++i)
                    if (!dw27_holds(pr, B, i, m, s)) return std::pair{false, json{{"i", i}, {"m", m}, {"s", s}}};
        return std::pair{true, json::object()};
    }));
    return out;
}

inline std::vector<CaseSpec> suite_thm3(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    const Prec& pr = ctx->prec();
    for (int s = 0; s <= 2; ++s)
        if (ipow(pr.p, s + 2) <= pr.k_lam)
            out.push_back(make_case("thm3", {{"s", s}}, [ctx, s] { return unit_limit_check(*ctx, s); }));
    out.push_back(make_case("thm3", {{"s", 0}, {"extra", 1}}, [ctx] { return unit_limit_check(*ctx, 0, 1); }, "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_dwcor(std::shared_ptr<const Context> ctx) {
    return {make_case("dwcor", json::object(), [ctx] { return eta_and_recursion_check(*ctx); }),
            make_case("eta_hasse", json::object(), [ctx] { return check_eta_hasse(*ctx); })};
}

// ---- frobstruct ----------------------------------------------------------

inline std::vector<CaseSpec> suite_unit_root(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("commutation", json::object(), [ctx] {
        return std::pair{unit_root_commutator(build_unit_root(*ctx)).is_zero(), json::object()};
    }));
    out.push_back(bool_case("eta_prime_from_matrix", json::object(), [ctx] {
        return std::pair{eta_prime_from_matrix_residual(*ctx, build_unit_root(*ctx)).is_zero(), json::object()};
    }));
    out.push_back(bool_case("units", json::object(), [ctx] {
        UnitRootData u = build_unit_root(*ctx);
        long p = ctx->prec().p;
        bool ok = *vp(u.phi_ratio.at(0, 0), p) == 0 && *vp(u.gamma_ratio.at(0, 0), p) == 0 &&
                  is_p_integral(u.phi_ratio) && is_p_integral(u.gamma_ratio);
        return std::pair{ok, json{{"sign", u.sign}}};
    }));
    out.push_back(bool_case("horizontal_F", json::object(), [ctx] {
        return std::pair{horizontality(LogSeries(ctx->F())).holds, json::object()};
    }));
    return out;
}

inline std::vector<CaseSpec> suite_a_integrality(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(make_case("a_integral", json::object(), [ctx] {
        auto b = frob_bundle(ctx);
        CongruenceReport r{"a_integral", json::object(), "R[[lambda]]"};
        ValuationWitness w = integrality_witness(b->fm.a);
        r.verdict = verdict_of(w.ok);
        r.witness = witness_json(w);
        r.witness["c"] = to_json(b->fm.c)["coeffs"];
        return r;
    }));
    out.push_back(bool_case("pieces", json::object(), [ctx] {
        APieces pc = a_pieces(*ctx);
        QSeries a0 = compute_a(*ctx, QSeries(ctx->prec()));
        bool ell = pc.ell_part.is_zero();
        bool sum = (pc.part2 + pc.part3 + pc.part4 - a0).is_zero();
        bool i2 = is_p_integral(pc.part2), i3 = is_p_integral(pc.part3), i4 = is_p_integral(pc.part4);
        return std::pair{ell && sum && i2 && i3 && i4,
                         json{{"log_part_zero", ell}, {"sum", sum}, {"part2", i2}, {"part3", i3}, {"part4", i4}}};
    }));
    const Prec& pr = ctx->prec();
    for (long ip = 1; ip * pr.p <= pr.k_lam && ip <= 3 * pr.p; ++ip)
        out.push_back(make_case("piece3_term", {{"iprime", ip}}, [ctx, ip] { return check_a_piece3_term(*ctx, ip); }));
    return out;
}

inline std::vector<CaseSpec> suite_commutation(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("commutator", json::object(), [ctx] {
        QMat c = commutator(frob_bundle(ctx)->fm);
        return std::pair{is_zero(c), json{{"lam_window", window(c).second}, {"eps_window", window(c).first}}};
    }));
    out.push_back(bool_case("lambda_dq_identity", json::object(), [ctx] {
        return std::pair{lambda_dq_identity_residual(*ctx, frob_bundle(ctx)->fm).is_zero(), json::object()};
    }));
    out.push_back(bool_case("dq_H_over_F", json::object(), [ctx] {
        return std::pair{dq_H_over_F_residual(*ctx).is_zero(), json::object()};
    }));
    out.push_back(bool_case("fil1", json::object(), [ctx] {
        FilResult f = fil1_condition(frob_bundle(ctx)->fm);
        return std::pair{f.holds(), json{{"col1", witness_json(f.col1)}, {"col2", witness_json(f.col2)}}};
    }));
    out.push_back(bool_case("basis", json::object(), [ctx] {
        const FrobMprime& fm = frob_bundle(ctx)->fm;
        const Prec& pr = ctx->prec();
        bool basis = basis_determinant(fm) == QSeries::one(pr).truncated(basis_determinant(fm).eps_window(),
                                                                          basis_determinant(fm).lam_window());
        QSeries det = fm.phi_matrix.det();
        QSeries pn = qnum(pr, Rat(pr.p));
        bool detp = (det - pn).truncated(det.eps_window(), det.lam_window()).is_zero();
        return std::pair{basis && detp, json{{"basis_det_one", basis}, {"det_phi_is_[p]", detp}}};
    }));
    return out;
}

inline std::vector<CaseSpec> suite_determine_c(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("b1_condition", json::object(), [ctx] {
        const CDetermination& cd = frob_bundle(ctx)->cdet;
        return std::pair{cd.condition_after,
                         json{{"b0", cd.b0.str()},
                              {"b1_raw", cd.b1_raw_after.str()},
                              {"b1_effective", cd.b1_effective_after.str()},
                              {"c", to_json(cd.c)["coeffs"]}}};
    }));
    out.push_back(bool_case("c_adjustment_eps_multiple", json::object(), [ctx] {
        const CDetermination& cd = frob_bundle(ctx)->cdet;
        QSeries d = cd.c;  // c0 = 0
        return std::pair{d.lambda_free() && d.eps_slice(0).is_zero(), json::object()};
    }));
    out.push_back(bool_case("FphiF_constant_term", json::object(), [ctx] {
        FphiFInfo i = fphif_info(*ctx);
        return std::pair{i.const_term == Rat(1), json{{"value", i.const_term.str()}}};
    }));
    // F phi(F) is not in 1 + eps R[[lambda]] beyond its constant term.
    out.push_back(bool_case(
        "FphiF_in_one_plus_eps_ideal", json::object(),
        [ctx] { return std::pair{fphif_info(*ctx).in_one_plus_eps_ideal, json::object()}; }, "fails"));
    return out;
}

inline std::vector<CaseSpec> suite_b1(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    out.push_back(bool_case("A1_A0inv_integral", json::object(), [ctx] {
        return std::pair{mat_p_integral(frob_bundle(ctx)->b1.M), json::object()};
    }));
    out.push_back(bool_case("A0_A1_at_zero", json::object(), [ctx] {
        auto b = frob_bundle(ctx);
        const Prec& pr = ctx->prec();
        long p = pr.p;
        Rat s(b->fm.sign);
        Rat b0 = b->cdet.b0, b1 = b->cdet.b1_effective_after;
        auto at0 = [](const QSeries& x) { return x.at(0, 0); };
        bool a0 = at0(b->b1.A0.a) == s * Rat(p) && at0(b->b1.A0.b).is_zero() && at0(b->b1.A0.c) == s * Rat(p) * b0 &&
                  at0(b->b1.A0.d) == s;
        bool a1 = at0(b->b1.A1.a) == s * Rat(p * (p - 1), 2) && at0(b->b1.A1.b).is_zero() &&
                  at0(b->b1.A1.c) == s * Rat(p) * b1 && at0(b->b1.A1.d).is_zero();
        return std::pair{a0 && a1, json{{"A0_0", mat_const_json(b->b1.A0)},
                                        {"A1_0", mat_const_json(b->b1.A1)},
                                        {"det_A0_0", b->b1.det_A0_const.str()}}};
    }));
    out.push_back(bool_case("D_vanishes_at_zero", json::object(), [ctx] {
        return std::pair{mat_lambda_const_zero(frob_bundle(ctx)->b1.D), json::object()};
    }));
    out.push_back(bool_case("residual_zero", json::object(), [ctx] {
        auto b = frob_bundle(ctx);
        return std::pair{is_zero(b->b1.residual),
                         json{{"iterations", b->b1.iterations}, {"lam_window", window(b->b1.residual).second}}};
    }));
    out.push_back(bool_case("stable_under_doubling", json::object(), [ctx] {
        auto b = frob_bundle(ctx);
        B1Solve twice = solve_B1(b->fm, 2 * b->b1.iterations);
        return std::pair{mats_equal(b->b1.B1, twice.B1), json::object()};
    }));
    out.push_back(bool_case("B1_integral", json::object(), [ctx] {
        auto b = frob_bundle(ctx);
        return std::pair{mat_p_integral(b->b1.B1), json{{"B1_0", mat_const_json(b->b1.B1)}}};
    }));
    return out;
}

inline std::vector<CaseSpec> suite_sigma(std::shared_ptr<const Context> ctx) {
    std::vector<CaseSpec> out;
    long p = ctx->prec().p;
    for (long l : {2L, 1 + p})
        out.push_back(make_case("sigma", {{"l", l}, {"r_max", 2}}, [ctx, l] { return arithmetic_action_check(*ctx, l, 2); }));
    out.push_back(bool_case("sigma_identity", {{"l", 1}}, [ctx] {
        const QSeries& F = ctx->F();
        return std::pair{sigma_act(F, Rat(1)) == F && sigma_phi_commutator(*ctx, Rat(1)).is_zero(), json::object()};
    }));
    out.push_back(bool_case("conjugation_random", {{"l", 2}, {"samples", 10}}, [ctx] {
        Sampler s(201);
        const Prec& pr = ctx->prec();
        for (int t = 0; t < 10; ++t) {
            QSeries f = s.series(pr, 6, pr.m_eps, pr.k_lam);
            if (!sigma_conjugation_residual(f, 2).is_zero()) return std::pair{false, json{{"sample", t}}};
        }
        return std::pair{true, json::object()};
    }));
    return out;
}

}  // namespace suites_detail

struct SuiteDef {
    std::string id;
    std::function<std::vector<CaseSpec>(std::shared_ptr<const Context>)> cases;
};

/// The suite list in manifest order.
inline const std::vector<SuiteDef>& manifest() {
    using namespace suites_detail;
    using C = std::shared_ptr<const Context>;
    static const std::vector<SuiteDef> m = {
        {"qcalc.prop2", [](C c) { return suite_prop2(c->prec()); }},
        {"hyper.LF", [](C c) { return suite_LF(c); }},
        {"hyper.LH", [](C c) { return suite_LH(c); }},
        {"hyper.aglem", [](C c) { return suite_aglem(c->prec()); }},
        {"hyper.wronskian", [](C c) { return suite_wronskian(c); }},
        {"hyper.connection", [](C c) { return suite_connection(c->prec()); }},
        {"hyper.horizontality", [](C c) { return suite_horizontality(c); }},
        {"hyper.hasse", [](C c) { return suite_hasse(c); }},
        {"classical.reduction", [](C c) { return suite_classical(c); }},
        {"dwork.lemma11", [](C c) { return suite_lemma11(c); }},
        {"dwork.lemma12", [](C c) { return suite_lemma12(c); }},
        {"dwork.cor_i", [](C c) { return suite_cor_i(c); }},
        {"dwork.cor_ii", [](C c) { return suite_cor_ii(c); }},
        {"dwork.thm2", [](C c) { return suite_thm2(c); }},
        {"dwork.thm3", [](C c) { return suite_thm3(c); }},
        {"dwork.dwcor", [](C c) { return suite_dwcor(c); }},
        {"frob.unit_root", [](C c) { return suite_unit_root(c); }},
        {"frob.a_integrality", [](C c) { return suite_a_integrality(c); }},
        {"frob.commutation", [](C c) { return suite_commutation(c); }},
        {"frob.determine_c", [](C c) { return suite_determine_c(c); }},
        {"frob.b1_solve", [](C c) { return suite_b1(c); }},
        {"frob.sigma", [](C c) { return suite_sigma(c); }},
    };
    return m;
}

inline std::vector<std::string> suite_ids() {
    std::vector<std::string> ids;
    for (const auto& s : manifest()) ids.push_back(s.id);
    return ids;
}

/// Expands "all" and validates names; throws invalid_argument on an unknown suite.
inline std::vector<std::string> resolve_suites(const std::vector<std::string>& requested) {
    std::vector<std::string> all = suite_ids();
    std::vector<std::string> out;
    for (const auto& s : requested) {
        if (s == "all") {
            for (const auto& id : all)
                if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
            continue;
        }
        if (std::find(all.begin(), all.end(), s) == all.end()) throw std::invalid_argument("unknown suite '" + s + "'");
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return out;
}

inline CaseResult run_case(const CaseSpec& spec) {
    CaseResult r{spec.id, spec.params, Verdict::inconclusive, json::object(), spec.expect};
    auto t0 = std::chrono::steady_clock::now();
    try {
        CongruenceReport rep = spec.run();
        r.verdict = rep.verdict;
        r.witness = rep.witness;
        if (!rep.modulus.empty() && rep.modulus != "exact") r.witness["modulus"] = rep.modulus;
    } catch (const inconclusive_error& e) {
        r.verdict = Verdict::inconclusive;
        r.witness = json{{"reason", e.what()}};
    } catch (const precision_error& e) {
        r.verdict = Verdict::inconclusive;
        r.witness = json{{"reason", e.what()}};
    } catch (const std::exception& e) {
        r.verdict = Verdict::fails;
        r.witness = json{{"error", e.what()}};
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline Verdict suite_verdict(const std::vector<CaseResult>& cases) {
    bool inconclusive = false;
    for (const auto& c : cases) {
        if (c.verdict == Verdict::inconclusive)
            inconclusive = true;
        else if (!c.as_expected())
            return Verdict::fails;
    }
    return inconclusive ? Verdict::inconclusive : Verdict::holds;
}

/// Runs the selected suites on a pool of config.jobs threads. Results are in manifest order.
inline std::vector<SuiteResult> run_suites(const RunConfig& config) {
    config.prec.validate();
    std::vector<std::string> ids = resolve_suites(config.suites);
    auto ctx = context_for(config.prec);

    std::vector<SuiteResult> results;
    std::vector<std::pair<size_t, CaseSpec>> work;
    for (const auto& def : manifest()) {
        if (std::find(ids.begin(), ids.end(), def.id) == ids.end()) continue;
        results.push_back(SuiteResult{def.id, {}, Verdict::holds, 0});
        for (auto& c : def.cases(ctx)) work.emplace_back(results.size() - 1, std::move(c));
    }
    std::vector<CaseResult> out(work.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < work.size(); i = next++) out[i] = run_case(work[i].second);
    };
    int jobs = std::max(1, config.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (size_t i = 0; i < work.size(); ++i) {
        SuiteResult& s = results[work[i].first];
        s.wall_ms += out[i].wall_ms;
        s.cases.push_back(std::move(out[i]));
    }
    for (auto& s : results) s.verdict = suite_verdict(s.cases);
    return results;
}

/// 0 if every suite holds (or is only inconclusive when allowed), else 1.
inline int exit_code(const std::vector<SuiteResult>& results, bool allow_inconclusive) {
    for (const auto& s : results) {
        if (s.verdict == Verdict::fails) return 1;
        if (s.verdict == Verdict::inconclusive && !allow_inconclusive) return 1;
    }
    return 0;
}

/// Deterministic JSON report (no timings).
inline json report_json(const RunConfig& config, const std::vector<SuiteResult>& results) {
    json cfg = prec_to_json(config.prec);
    cfg["manifest"] = kManifestVersion;
    cfg["allow_inconclusive"] = config.allow_inconclusive;
    json suites = json::array();
    for (const auto& s : results) {
        json cases = json::array();
        for (const auto& c : s.cases)
            cases.push_back(json{{"id", c.id},
                                 {"params", c.params},
                                 {"verdict", to_string(c.verdict)},
                                 {"witness", c.witness},
                                 {"expect", c.expect}});
        suites.push_back(json{{"id", s.id}, {"cases", cases}, {"verdict", to_string(s.verdict)}});
    }
    return json{{"config", cfg}, {"suites", suites}};
}

/// Human-readable summary including wall times.
inline std::string report_text(const RunConfig& config, const std::vector<SuiteResult>& results) {
    std::ostringstream os;
    const Prec& pr = config.prec;
    os << "p=" << pr.p << " np=" << pr.n_p << " meps=" << pr.m_eps << " klam=" << pr.k_lam << " manifest="
       << kManifestVersion << "\n";
    for (const auto& s : results) {
        size_t ok = 0;
        for (const auto& c : s.cases) ok += c.as_expected() ? 1 : 0;
        os << to_string(s.verdict) << "  " << s.id << "  (" << ok << "/" << s.cases.size() << " as expected, "
           << static_cast<long>(s.wall_ms) << " ms)\n";
        for (const auto& c : s.cases)
            if (!c.as_expected())
                os << "    " << to_string(c.verdict) << " (expected " << c.expect << ")  " << c.id << "  "
                   << c.witness.dump() << "\n";
    }
    return os.str();
}

}  // namespace qdwork
