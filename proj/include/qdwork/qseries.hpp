#pragma once

// Truncated elements of Q[[eps]]((lambda)), eps = q - 1.
//
// A QSeries is known modulo eps^eps_window() (as a Laurent series in lambda)
// plus lambda^lam_window() (as a power series). Every operation computes the
// window its result is exact on; coefficients outside the window are zero.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prec.hpp"
#include "rat.hpp"

namespace qdwork {

class QSeries {
public:
    explicit QSeries(const Prec& prec)
        : prec_(prec), eps_win_(prec.m_eps), lam_win_(prec.k_lam),
          c_(static_cast<std::size_t>(prec.m_eps) * width_of(prec)) {}

    static QSeries constant(const Prec& prec, const Rat& c) {
        QSeries r(prec);
        r.set(0, 0, c);
        return r;
    }
    static QSeries one(const Prec& prec) { return constant(prec, Rat(1)); }
    static QSeries monomial(const Prec& prec, const Rat& c, int i, int j) {
        QSeries r(prec);
        r.set(i, j, c);
        return r;
    }
    static QSeries lambda(const Prec& prec) { return monomial(prec, Rat(1), 0, 1); }
    static QSeries eps(const Prec& prec) { return monomial(prec, Rat(1), 1, 0); }
    /// q = 1 + eps
    static QSeries q(const Prec& prec) { return one(prec) + eps(prec); }

    const Prec& prec() const { return prec_; }
    int eps_window() const { return eps_win_; }
    int lam_window() const { return lam_win_; }
    int lam_low() const { return prec_.lam_low; }

    bool in_window(int i, int j) const { return i >= 0 && i < eps_win_ && j >= prec_.lam_low && j < lam_win_; }

    /// Coefficient of eps^i lambda^j. Zero outside the window.
    const Rat& at(int i, int j) const {
        static const Rat zero;
        if (!in_window(i, j)) return zero;
        return c_[idx(i, j)];
    }

    /// Sets a coefficient. Writes outside the window are dropped (truncation).
    void set(int i, int j, const Rat& v) {
        if (j < prec_.lam_low && !v.is_zero())
            throw precision_error("QSeries: lambda exponent " + std::to_string(j) + " below lam_low");
        if (!in_window(i, j)) return;
        c_[idx(i, j)] = v;
    }
    void add_to(int i, int j, const Rat& v) {
        if (j < prec_.lam_low && !v.is_zero())
            throw precision_error("QSeries: lambda exponent " + std::to_string(j) + " below lam_low");
        if (!in_window(i, j)) return;
        c_[idx(i, j)] += v;
    }

    /// Restricts the window (never enlarges it).
    QSeries truncated(int eps_win, int lam_win) const {
        QSeries r = *this;
        r.shrink_window(eps_win, lam_win);
        return r;
    }
    void shrink_window(int eps_win, int lam_win) {
        eps_win = std::clamp(eps_win, 0, eps_win_);
        lam_win = std::clamp(lam_win, prec_.lam_low, lam_win_);
        for (int i = 0; i < prec_.m_eps; ++i)
            for (int j = prec_.lam_low; j < prec_.k_lam; ++j)
                if (i >= eps_win || j >= lam_win) c_[idx(i, j)] = Rat();
        eps_win_ = eps_win;
        lam_win_ = lam_win;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.is_zero(); });
    }

    /// Lowest lambda-exponent with a nonzero coefficient; lam_window() if zero.
    int lam_valuation() const {
        for (int j = prec_.lam_low; j < lam_win_; ++j)
            for (int i = 0; i < eps_win_; ++i)
                if (!c_[idx(i, j)].is_zero()) return j;
        return lam_win_;
    }
    /// Lowest eps-exponent with a nonzero coefficient; eps_window() if zero.
    int eps_valuation() const {
        for (int i = 0; i < eps_win_; ++i)
            for (int j = prec_.lam_low; j < lam_win_; ++j)
                if (!c_[idx(i, j)].is_zero()) return i;
        return eps_win_;
    }
    /// Highest lambda-exponent with a nonzero coefficient, or lam_low - 1 if zero.
    int lam_degree() const {
        for (int j = lam_win_ - 1; j >= prec_.lam_low; --j)
            for (int i = 0; i < eps_win_; ++i)
                if (!c_[idx(i, j)].is_zero()) return j;
        return prec_.lam_low - 1;
    }
    bool lambda_free() const {
        for (int i = 0; i < eps_win_; ++i)
            for (int j = prec_.lam_low; j < lam_win_; ++j)
                if (j != 0 && !c_[idx(i, j)].is_zero()) return false;
        return true;
    }

    /// The eps-series multiplying lambda^j (lambda-free result).
    QSeries lambda_coeff(int j) const {
        QSeries r(prec_);
        r.eps_win_ = eps_win_;
        for (int i = 0; i < eps_win_; ++i) r.c_[r.idx(i, 0)] = at(i, j);
        r.shrink_window(eps_win_, prec_.k_lam);
        return r;
    }
    /// The lambda-series multiplying eps^i, returned with eps window 1.
    QSeries eps_slice(int i) const {
        QSeries r(prec_);
        for (int j = prec_.lam_low; j < lam_win_; ++j) r.c_[r.idx(0, j)] = at(i, j);
        r.shrink_window(1, lam_win_);
        return r;
    }

    QSeries& operator+=(const QSeries& o) { return combine(o, false); }
    QSeries& operator-=(const QSeries& o) { return combine(o, true); }
    QSeries& operator*=(const Rat& s) {
        for (auto& x : c_)
            if (!x.is_zero()) x *= s;
        return *this;
    }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const Rat& s) { return a *= s; }
    friend QSeries operator*(const Rat& s, QSeries a) { return a *= s; }
    friend QSeries operator-(QSeries a) { return a *= Rat(-1); }
    friend QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

    /// Cauchy product with honest window accounting. Throws precision_error when
    /// Laurent tails collide below lam_low.
    friend QSeries mul(const QSeries& f, const QSeries& g) {
        f.require_same(g);
        const Prec& pr = f.prec_;
        int ef = f.eps_valuation(), eg = g.eps_valuation();
        int lf = f.lam_valuation(), lg = g.lam_valuation();
        QSeries r(pr);
        r.eps_win_ = std::min({pr.m_eps, f.eps_win_ + eg, g.eps_win_ + ef});
        r.lam_win_ = std::min({pr.k_lam, f.lam_win_ + lg, g.lam_win_ + lf});
        auto fs = f.support(), gs = g.support();
        for (const auto& [i1, j1, a] : fs) {
            for (const auto& [i2, j2, b] : gs) {
                int i = i1 + i2;
                if (i >= r.eps_win_) continue;
                int j = j1 + j2;
                if (j >= r.lam_win_) continue;
                if (j < pr.lam_low) throw precision_error("mul: Laurent tails collide below lam_low");
                mpq_class& dst = const_cast<mpq_class&>(r.c_[r.idx(i, j)].raw());
                dst += a->raw() * b->raw();
            }
        }
        return r;
    }

    /// Multiplication by lambda^k.
    QSeries shift_lambda(int k) const {
        QSeries r(prec_);
        r.eps_win_ = eps_win_;
        r.lam_win_ = std::min(prec_.k_lam, lam_win_ + k);
        if (r.lam_win_ < prec_.lam_low) r.lam_win_ = prec_.lam_low;
        for (const auto& [i, j, v] : support()) {
            int nj = j + k;
            if (nj < prec_.lam_low) throw precision_error("shift_lambda: exponent below lam_low");
            if (nj < r.lam_win_) r.c_[r.idx(i, nj)] = *v;
        }
        return r;
    }

    /// Exact equality: same window and same coefficients.
    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.prec_ == b.prec_ && a.eps_win_ == b.eps_win_ && a.lam_win_ == b.lam_win_ && a.c_ == b.c_;
    }

    /// Equality on the common window.
    bool agrees_with(const QSeries& o) const {
        require_same(o);
        int ew = std::min(eps_win_, o.eps_win_), lw = std::min(lam_win_, o.lam_win_);
        for (int i = 0; i < ew; ++i)
            for (int j = prec_.lam_low; j < lw; ++j)
                if (at(i, j) != o.at(i, j)) return false;
        return true;
    }

    struct Term {
        int i;
        int j;
        const Rat* value;
    };
    std::vector<Term> support() const {
        std::vector<Term> out;
        for (int i = 0; i < eps_win_; ++i)
            for (int j = prec_.lam_low; j < lam_win_; ++j) {
                const Rat& v = c_[idx(i, j)];
                if (!v.is_zero()) out.push_back({i, j, &v});
            }
        return out;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [i, j, v] : support()) {
            if (!first) os << " + ";
            first = false;
            os << "(" << *v << ")";
            if (i) os << "*e^" << i;
            if (j) os << "*L^" << j;
        }
        if (first) os << "0";
        os << " [mod e^" << eps_win_ << ", L^" << lam_win_ << "]";
        return os.str();
    }

    void require_same(const QSeries& o) const {
        if (!(prec_ == o.prec_)) throw std::invalid_argument("QSeries: precision contexts differ");
    }

private:
    static std::size_t width_of(const Prec& p) { return static_cast<std::size_t>(p.k_lam - p.lam_low); }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * width_of(prec_) + static_cast<std::size_t>(j - prec_.lam_low);
    }

    QSeries& combine(const QSeries& o, bool subtract) {
        require_same(o);
        int ew = std::min(eps_win_, o.eps_win_), lw = std::min(lam_win_, o.lam_win_);
        shrink_window(ew, lw);
        for (const auto& [i, j, v] : o.support()) {
            if (i >= ew || j >= lw) continue;
            if (subtract)
                c_[idx(i, j)] -= *v;
            else
                c_[idx(i, j)] += *v;
        }
        return *this;
    }

    Prec prec_;
    int eps_win_;
    int lam_win_;
    std::vector<Rat> c_;
};

/// Inverse of a power series with nonzero constant coefficient.
inline QSeries invert(const QSeries& f) {
    const Prec& pr = f.prec();
    if (f.lam_valuation() < 0) throw std::domain_error("invert: series has a pole; use invert_laurent");
    const Rat& c00 = f.at(0, 0);
    if (c00.is_zero()) throw std::domain_error("invert: leading coefficient is not a unit");
    int ew = f.eps_window(), lw = f.lam_window();
    QSeries g(pr);
    g.shrink_window(ew, lw);
    Rat inv0 = Rat(1) / c00;
    auto fs = f.support();
    // Solve f*g = 1 coefficientwise in (i, j) lexicographic order.
    for (int i = 0; i < ew; ++i) {
        for (int j = 0; j < lw; ++j) {
            mpq_class acc = (i == 0 && j == 0) ? mpq_class(1) : mpq_class(0);
            for (const auto& [i1, j1, v] : fs) {
                if (i1 == 0 && j1 == 0) continue;
                if (i1 > i || j1 > j) continue;
                const Rat& gv = g.at(i - i1, j - j1);
                if (!gv.is_zero()) acc -= v->raw() * gv.raw();
            }
            if (sgn(acc) != 0) g.set(i, j, Rat(mpq_class(acc)) * inv0);
        }
    }
    return g;
}

/// Inverse of lambda^v * u with u(0, 0) != 0.
inline QSeries invert_laurent(const QSeries& f) {
    int v = f.lam_valuation();
    if (v >= f.lam_window()) throw std::domain_error("invert_laurent: zero series");
    if (f.at(0, v).is_zero()) throw std::domain_error("invert_laurent: leading coefficient is not a unit");
    return invert(f.shift_lambda(-v)).shift_lambda(-v);
}

/// f / g over Q. g = eps^w lambda^v u with u a unit; f must be divisible by eps^w.
inline QSeries div_exact(const QSeries& f, const QSeries& g) {
    f.require_same(g);
    int w = g.eps_valuation(), v = g.lam_valuation();
    if (w >= g.eps_window() || g.at(w, v).is_zero())
        throw std::domain_error("div_exact: divisor has no invertible leading coefficient");
    const Prec& pr = f.prec();
    // u = g / (eps^w lambda^v)
    QSeries u(pr);
    u.shrink_window(g.eps_window() - w, pr.k_lam);
    for (const auto& [i, j, c] : g.support()) u.set(i - w, j, *c);
    u.shrink_window(g.eps_window() - w, g.lam_window());
    u = u.shift_lambda(-v);
    // f / eps^w
    QSeries fe(pr);
    fe.shrink_window(std::max(0, f.eps_window() - w), f.lam_window());
    for (const auto& [i, j, c] : f.support()) {
        if (i < w) throw precision_error("div_exact: dividend not divisible by eps^" + std::to_string(w));
        fe.set(i - w, j, *c);
    }
    return mul(fe, invert(u)).shift_lambda(-v);
}

/// Worst p-adic margin over the window: min over coefficients of vp(c_ij) - required(i).
struct ValuationWitness {
    bool ok = true;
    long margin = std::numeric_limits<long>::max();  // max() when every coefficient is 0
    int i = -1;
    int j = 0;
};

template <typename Required>
ValuationWitness valuation_witness(const QSeries& f, Required required) {
    ValuationWitness w;
    for (const auto& [i, j, v] : f.support()) {
        long m = *vp(*v, f.prec().p) - required(i);
        if (m < w.margin) {
            w.margin = m;
            w.i = i;
            w.j = j;
        }
    }
    w.ok = w.margin >= 0;
    return w;
}

/// All coefficients p-integral within the window.
inline ValuationWitness integrality_witness(const QSeries& f) {
    return valuation_witness(f, [](int) { return 0L; });
}
inline bool is_p_integral(const QSeries& f) { return integrality_witness(f).ok; }

/// Membership in (p, eps)^n R((lambda)) on the window.
inline ValuationWitness ideal_pow_witness(const QSeries& f, int n) {
    if (n < 0) throw std::invalid_argument("in_ideal_pow: negative power");
    if (n > f.prec().n_p || n > f.eps_window())
        throw inconclusive_error("in_ideal_pow: (p, eps)^" + std::to_string(n) + " exceeds the window (eps window " +
                                 std::to_string(f.eps_window()) + ", n_p " + std::to_string(f.prec().n_p) + ")");
    return valuation_witness(f, [n](int i) { return std::max(0L, static_cast<long>(n - i)); });
}
inline bool in_ideal_pow(const QSeries& f, int n) { return ideal_pow_witness(f, n).ok; }

/// f in g * R((lambda)) for g lambda-free with nonzero constant term.
inline ValuationWitness divisibility_witness(const QSeries& f, const QSeries& g) {
    if (!g.lambda_free() || g.at(0, 0).is_zero())
        throw std::invalid_argument("divisible_by: divisor must be lambda-free with nonzero constant term");
    return integrality_witness(div_exact(f, g));
}
inline bool divisible_by(const QSeries& f, const QSeries& g) { return divisibility_witness(f, g).ok; }

/// The eps^0 slice (specialization q = 1).
inline QSeries reduce_mod_eps(const QSeries& f) { return f.eps_slice(0); }

/// Finite-precision proxy for membership in R<lambda, 1/g1>: some f*g1^e, e <= dmax,
/// is congruent mod (p, eps)^n to a lambda-polynomial of degree < W - e*deg(g1) - guard.
/// guard < 0 selects W/2. Throws inconclusive_error when no exponent leaves a usable band.
inline bool localized_membership(const QSeries& f, const QSeries& g1, int n, int dmax, int guard = -1) {
    int deg = g1.lam_degree();
    if (g1.lam_valuation() < 0) throw std::invalid_argument("localized_membership: g1 must be a polynomial");
    if (!is_p_integral(g1) || *vp(g1.at(0, 0), g1.prec().p) != 0)
        throw std::invalid_argument("localized_membership: g1 must have unit constant term");
    QSeries power = QSeries::one(f.prec());
    bool any_decidable = false;
    for (int e = 0; e <= dmax; ++e) {
        if (e > 0) power = mul(power, g1);
        QSeries h = mul(f, power);
        int w = h.lam_window();
        int g = guard < 0 ? w / 2 : guard;
        int bound = w - e * deg - g;
        if (bound < 1 || bound >= w) continue;
        any_decidable = true;
        // tail coefficients must lie in (p, eps)^n
        QSeries tail(f.prec());
        tail.shrink_window(h.eps_window(), w);
        for (const auto& [i, j, v] : h.support())
            if (j >= bound) tail.set(i, j, *v);
        if (in_ideal_pow(tail, n)) return true;
    }
    if (!any_decidable) throw inconclusive_error("localized_membership: lambda window too small for dmax");
    return false;
}

}  // namespace qdwork
