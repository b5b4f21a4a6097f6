#pragma once

#include <stdexcept>
#include <string>

#include "rat.hpp"

namespace qdwork {

/// A result would need coefficients outside the stored window (Laurent underflow,
/// log-degree overflow, division leaving the window).
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A claim cannot be decided at the available precision. Never reported as "false".
class inconclusive_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precision context for the truncated ring Q[[eps]]((lambda)), eps = q - 1.
///
/// Series are stored modulo (eps^m_eps, lambda^k_lam) with lambda-exponents
/// bounded below by lam_low. Congruence claims are refused beyond p^n_p.
struct Prec {
    long p = 3;
    int n_p = 6;
    int m_eps = 6;
    int k_lam = 64;
    int lam_low = -2;
    int log_cap = 2;

    void validate() const {
        if (!is_odd_prime(p)) throw std::invalid_argument("Prec: p = " + std::to_string(p) + " is not an odd prime");
        if (n_p < 1 || m_eps < 1 || k_lam < 1) throw std::invalid_argument("Prec: n_p, m_eps, k_lam must be >= 1");
        if (lam_low > 0) throw std::invalid_argument("Prec: lam_low must be <= 0");
        if (log_cap < 0) throw std::invalid_argument("Prec: log_cap must be >= 0");
    }

    friend bool operator==(const Prec&, const Prec&) = default;
};

inline Prec make_prec(long p, int n_p, int m_eps, int k_lam, int lam_low = -2, int log_cap = 2) {
    Prec pr{p, n_p, m_eps, k_lam, lam_low, log_cap};
    pr.validate();
    return pr;
}

}  // namespace qdwork
