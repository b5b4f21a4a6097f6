#pragma once

// Verdicts and case reports shared by the checkers and the suite runner.

#include <exception>
#include <string>

#include <json.hpp>

#include "prec.hpp"
#include "qseries.hpp"

namespace qdwork {

using json = nlohmann::json;

enum class Verdict { holds, fails, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

inline Verdict verdict_from_string(const std::string& s) {
    if (s == "holds") return Verdict::holds;
    if (s == "fails") return Verdict::fails;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

/// Outcome of one claim at fixed parameters.
struct CongruenceReport {
    std::string claim;
    json params = json::object();
    std::string modulus;
    Verdict verdict = Verdict::inconclusive;
    json witness = json::object();

    bool holds() const { return verdict == Verdict::holds; }
};

inline Verdict verdict_of(bool ok) { return ok ? Verdict::holds : Verdict::fails; }

inline json witness_json(const ValuationWitness& w) {
    json j = json::object();
    if (w.i < 0) {
        j["margin"] = "inf";
        return j;
    }
    j["margin"] = w.margin;
    j["eps"] = w.i;
    j["lam"] = w.j;
    return j;
}

/// Runs fn; an inconclusive_error becomes an inconclusive report.
template <typename Fn>
CongruenceReport guarded(CongruenceReport base, Fn&& fn) {
    try {
        return fn(base);
    } catch (const inconclusive_error& e) {
        base.verdict = Verdict::inconclusive;
        base.witness = json{{"reason", e.what()}};
        return base;
    }
}

}  // namespace qdwork
