#pragma once

// Per-precision cache of the expensive shared objects (A_{1/2}(n), F, H).
// Thread-safe; built lazily on first use.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hyper.hpp"

namespace qdwork {

class Context {
public:
    explicit Context(const Prec& prec) : prec_(prec) { prec_.validate(); }

    const Prec& prec() const { return prec_; }

    /// A_{1/2}(n).
    QSeries A(long n) const {
        std::lock_guard lock(a_mu_);
        extend_locked(n + 1);
        return A_[n];
    }
    /// a_n = A_{1/2}(n)^2.
    QSeries a(long n) const {
        std::lock_guard lock(a_mu_);
        extend_locked(n + 1);
        return a_[n];
    }
    std::vector<QSeries> a_list(long count) const {
        std::lock_guard lock(a_mu_);
        extend_locked(count);
        return {a_.begin(), a_.begin() + count};
    }

    const QSeries& F() const {
        std::call_once(f_once_, [this] { F_ = lambda_sum(prec_, a_list(prec_.k_lam), 0, prec_.k_lam); });
        return *F_;
    }
    const LogSeries& H() const {
        std::call_once(h_once_, [this] { H_ = solution_H(prec_); });
        return *H_;
    }

private:
    void extend_locked(long count) const {
        if (A_.empty()) {
            A_.push_back(QSeries::one(prec_));
            a_.push_back(QSeries::one(prec_));
        }
        while (static_cast<long>(A_.size()) < count) {
            long n = static_cast<long>(A_.size());
            QSeries next = mul(A_.back(), mul(qnum(prec_, Rat(2 * n - 1, 2)), invert(qnum(prec_, Rat(n)))));
            if (!is_p_integral(next))
                throw std::logic_error("A_{1/2}(" + std::to_string(n) + ") is not p-integral");
            a_.push_back(mul(next, next));
            A_.push_back(std::move(next));
        }
    }

    Prec prec_;
    mutable std::mutex a_mu_;
    mutable std::vector<QSeries> A_, a_;
    mutable std::once_flag f_once_, h_once_;
    mutable std::optional<QSeries> F_;
    mutable std::optional<LogSeries> H_;
};

/// Shared context for a precision; one instance per distinct Prec.
inline std::shared_ptr<const Context> context_for(const Prec& prec) {
    static std::mutex mu;
    static std::map<std::tuple<long, int, int, int, int, int>, std::shared_ptr<const Context>> cache;
    auto key = std::make_tuple(prec.p, prec.n_p, prec.m_eps, prec.k_lam, prec.lam_low, prec.log_cap);
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const Context>(prec);
    cache.emplace(key, ctx);
    return ctx;
}

}  // namespace qdwork
