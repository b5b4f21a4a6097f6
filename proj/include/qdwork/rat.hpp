#pragma once

// Exact rational coefficients with p-adic valuation.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdwork {

/// p-adic valuation of a rational. `std::nullopt` stands for +infinity (the value 0).
using Valuation = std::optional<long>;

inline bool valuation_at_least(const Valuation& v, long bound) {
    return !v || *v >= bound;
}

/// Exact rational number, always in canonical form (gcd 1, positive denominator).
class Rat {
public:
    Rat() = default;
    Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_.canonicalize();
    }
    Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "n" or "n/d" (decimal). Throws std::invalid_argument on malformed input.
    static Rat parse(std::string_view s) {
        mpq_class q;
        if (s.empty() || q.set_str(std::string(s), 10) != 0)
            throw std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'");
        if (q.get_den() == 0) throw std::invalid_argument("Rat: zero denominator");
        q.canonicalize();
        return Rat(std::move(q));
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    std::string str() const { return v_.get_str(10); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_;
};

inline long vp_int(const mpz_class& n, unsigned long p) {
    // caller guarantees n != 0
    mpz_class m = abs(n);
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

/// v_p(x) = v_p(num) - v_p(den); +infinity for 0.
inline Valuation vp(const Rat& x, long p) {
    if (x.is_zero()) return std::nullopt;
    auto up = static_cast<unsigned long>(p);
    return vp_int(x.num(), up) - vp_int(x.den(), up);
}

inline bool is_p_integral(const Rat& x, long p) { return valuation_at_least(vp(x, p), 0); }

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_odd_prime(long n) { return n > 2 && is_prime(n); }

/// Reduces a p-integral rational modulo p to a residue in [0, p).
inline long residue_mod_p(const Rat& x, long p) {
    if (!is_p_integral(x, p)) throw std::domain_error("residue_mod_p: not p-integral");
    mpz_class m = p;
    mpz_class dinv;
    mpz_class den = x.den() % m;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("residue_mod_p: denominator not invertible");
    mpz_class r = (x.num() * dinv) % m;
    if (r < 0) r += m;
    return r.get_si();
}

/// Rational whose denominator is a power of two; p-integral for every odd p.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    Dyadic(long n, long d) : Dyadic(Rat(n, d)) {}
    explicit Dyadic(Rat r) : value_(std::move(r)) {
        mpz_class d = value_.den();
        if ((d & (d - 1)) != 0) throw std::invalid_argument("Dyadic: denominator " + d.get_str() + " is not a power of 2");
    }

    const Rat& value() const { return value_; }
    bool is_integer() const { return value_.is_integer(); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) { return Dyadic(a.value_ + b.value_); }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return Dyadic(a.value_ - b.value_); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(a.value_ * b.value_); }
    friend bool operator==(const Dyadic& a, const Dyadic& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.value_; }

private:
    Rat value_;
};

/// Generalized binomial coefficient a(a-1)...(a-i+1)/i! for any rational a.
inline Rat gen_binom(const Rat& a, long i) {
    if (i < 0) throw std::invalid_argument("gen_binom: negative index");
    Rat r(1);
    for (long k = 0; k < i; ++k) {
        r *= (a - Rat(k));
        r /= Rat(k + 1);
    }
    return r;
}

inline Rat gen_binom(const Dyadic& a, long i) { return gen_binom(a.value(), i); }

}  // namespace qdwork
