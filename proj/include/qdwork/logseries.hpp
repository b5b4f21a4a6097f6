#pragma once

// Polynomials in the formal symbol l = log_q(lambda) with QSeries coefficients.

#include <stdexcept>
#include <string>
#include <vector>

#include "qseries.hpp"

namespace qdwork {

class LogSeries {
public:
    explicit LogSeries(const Prec& prec) : prec_(prec), parts_{QSeries(prec)} {}
    LogSeries(const QSeries& f) : prec_(f.prec()), parts_{f} {}  // NOLINT(google-explicit-constructor)

    /// The symbol l itself.
    static LogSeries ell(const Prec& prec) {
        LogSeries r(prec);
        r.set_part(1, QSeries::one(prec));
        return r;
    }

    const Prec& prec() const { return prec_; }

    /// Highest l-degree with a nonzero coefficient (0 for the zero series).
    int degree() const {
        for (int d = static_cast<int>(parts_.size()) - 1; d > 0; --d)
            if (!parts_[d].is_zero()) return d;
        return 0;
    }
    int stored_parts() const { return static_cast<int>(parts_.size()); }

    /// Coefficient of l^d; an exact zero when d is beyond the stored parts.
    QSeries part(int d) const {
        if (d < 0) throw std::out_of_range("LogSeries: negative degree");
        if (d < stored_parts()) return parts_[d];
        return QSeries(prec_);
    }
    void set_part(int d, const QSeries& f) {
        f.require_same(parts_[0]);
        if (d > prec_.log_cap && !f.is_zero())
            throw precision_error("LogSeries: l-degree " + std::to_string(d) + " exceeds log_cap " +
                                  std::to_string(prec_.log_cap));
        if (d >= stored_parts()) parts_.resize(d + 1, QSeries(prec_));
        parts_[d] = f;
    }

    LogSeries& operator+=(const LogSeries& o) {
        for (int d = 0; d < o.stored_parts(); ++d) {
            if (d < stored_parts())
                parts_[d] += o.parts_[d];
            else
                set_part(d, o.parts_[d]);
        }
        return *this;
    }
    LogSeries& operator-=(const LogSeries& o) { return *this += -o; }

    friend LogSeries operator+(LogSeries a, const LogSeries& b) { return a += b; }
    friend LogSeries operator-(LogSeries a, const LogSeries& b) { return a -= b; }
    friend LogSeries operator-(const LogSeries& a) {
        LogSeries r = a;
        for (auto& f : r.parts_) f = -f;
        return r;
    }
    friend LogSeries operator*(const QSeries& g, const LogSeries& a) {
        LogSeries r = a;
        for (auto& f : r.parts_) f = mul(g, f);
        return r;
    }
    friend LogSeries operator*(const LogSeries& a, const QSeries& g) { return g * a; }
    friend LogSeries operator*(const Rat& s, const LogSeries& a) {
        LogSeries r = a;
        for (auto& f : r.parts_) f *= s;
        return r;
    }

    /// Polynomial product in l. Overflow past log_cap is an error, never a truncation.
    friend LogSeries operator*(const LogSeries& a, const LogSeries& b) {
        int da = a.degree(), db = b.degree();
        if (da + db > a.prec_.log_cap)
            throw precision_error("LogSeries: product degree " + std::to_string(da + db) + " exceeds log_cap " +
                                  std::to_string(a.prec_.log_cap));
        LogSeries r(a.prec_);
        for (int i = 0; i <= da; ++i)
            for (int j = 0; j <= db; ++j) {
                QSeries t = mul(a.parts_[i], b.parts_[j]);
                if (i + j < r.stored_parts())
                    r.parts_[i + j] += t;
                else
                    r.set_part(i + j, t);
            }
        return r;
    }

    bool is_zero() const {
        for (const auto& f : parts_)
            if (!f.is_zero()) return false;
        return true;
    }

    /// Equality on the common window of every part.
    bool agrees_with(const LogSeries& o) const {
        int n = std::max(stored_parts(), o.stored_parts());
        for (int d = 0; d < n; ++d)
            if (!part(d).agrees_with(o.part(d))) return false;
        return true;
    }

    /// Drops the upper parts that are identically zero.
    LogSeries trimmed() const {
        LogSeries r = *this;
        r.parts_.resize(degree() + 1, QSeries(prec_));
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (int d = 0; d < stored_parts(); ++d) {
            if (d) s += " + ";
            s += "[" + parts_[d].to_string() + "]*l^" + std::to_string(d);
        }
        return s;
    }

private:
    Prec prec_;
    std::vector<QSeries> parts_;
};

}  // namespace qdwork
