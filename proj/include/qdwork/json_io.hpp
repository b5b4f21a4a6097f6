#pragma once

// JSON round-trip for QSeries, LogSeries and 2x2 matrices. Rationals are
// written as exact "num/den" strings.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "logseries.hpp"
#include "mat2.hpp"
#include "qseries.hpp"

namespace qdwork {

inline nlohmann::json prec_to_json(const Prec& pr) {
    return {{"p", pr.p}, {"np", pr.n_p}, {"meps", pr.m_eps}, {"klam", pr.k_lam}, {"lamlow", pr.lam_low},
            {"logcap", pr.log_cap}};
}

inline Prec prec_from_json(const nlohmann::json& j) {
    Prec pr;
    pr.p = j.at("p").get<long>();
    pr.n_p = j.at("np").get<int>();
    pr.m_eps = j.at("meps").get<int>();
    pr.k_lam = j.at("klam").get<int>();
    pr.lam_low = j.value("lamlow", pr.lam_low);
    pr.log_cap = j.value("logcap", pr.log_cap);
    pr.validate();
    return pr;
}

inline nlohmann::json to_json(const QSeries& f) {
    nlohmann::json j = prec_to_json(f.prec());
    j["epswin"] = f.eps_window();
    j["lamwin"] = f.lam_window();
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [i, k, v] : f.support()) coeffs.push_back(nlohmann::json::array({i, k, v->str()}));
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline QSeries qseries_from_json(const nlohmann::json& j) {
    QSeries f(prec_from_json(j));
    f.shrink_window(j.value("epswin", f.eps_window()), j.value("lamwin", f.lam_window()));
    for (const auto& t : j.at("coeffs")) {
        int i = t.at(0).get<int>(), k = t.at(1).get<int>();
        if (!f.in_window(i, k)) throw std::invalid_argument("qseries_from_json: coefficient outside window");
        f.set(i, k, Rat::parse(t.at(2).get<std::string>()));
    }
    return f;
}

inline nlohmann::json to_json(const LogSeries& f) {
    nlohmann::json parts = nlohmann::json::array();
    for (int d = 0; d < f.stored_parts(); ++d) parts.push_back(to_json(f.part(d)));
    return {{"kind", "logseries"}, {"parts", parts}};
}

inline LogSeries logseries_from_json(const nlohmann::json& j) {
    const auto& parts = j.at("parts");
    if (parts.empty()) throw std::invalid_argument("logseries_from_json: no parts");
    LogSeries f(prec_from_json(parts.at(0)));
    for (size_t d = 0; d < parts.size(); ++d) f.set_part(static_cast<int>(d), qseries_from_json(parts[d]));
    return f;
}

inline nlohmann::json to_json(const QMat& m) {
    return {{"kind", "mat2"}, {"a", to_json(m.a)}, {"b", to_json(m.b)}, {"c", to_json(m.c)}, {"d", to_json(m.d)}};
}

inline QMat qmat_from_json(const nlohmann::json& j) {
    return {qseries_from_json(j.at("a")), qseries_from_json(j.at("b")), qseries_from_json(j.at("c")),
            qseries_from_json(j.at("d"))};
}

}  // namespace qdwork
