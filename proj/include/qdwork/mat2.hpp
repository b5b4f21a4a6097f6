#pragma once

// 2x2 matrices over series rings. Column k holds the coordinates of the image
// of the k-th basis vector.

#include <array>
#include <functional>
#include <utility>

#include "qseries.hpp"

namespace qdwork {

template <typename T>
struct Mat2 {
    T a, b, c, d;  // [[a, b], [c, d]]

    const T& at(int i, int j) const { return i == 0 ? (j == 0 ? a : b) : (j == 0 ? c : d); }
    T& at(int i, int j) { return i == 0 ? (j == 0 ? a : b) : (j == 0 ? c : d); }

    template <typename Fn>
    auto map(Fn&& fn) const -> Mat2<decltype(fn(a))> {
        return {fn(a), fn(b), fn(c), fn(d)};
    }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
    friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(const T& s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }

    /// Matrix times column vector.
    template <typename V>
    std::pair<V, V> apply(const V& x, const V& y) const {
        return {a * x + b * y, c * x + d * y};
    }

    T det() const { return a * d - b * c; }
};

using QMat = Mat2<QSeries>;

inline QMat identity_mat(const Prec& prec) {
    return {QSeries::one(prec), QSeries(prec), QSeries(prec), QSeries::one(prec)};
}
inline QMat diag_mat(const QSeries& x, const QSeries& y) { return {x, QSeries(x.prec()), QSeries(x.prec()), y}; }

inline bool is_zero(const QMat& m) { return m.a.is_zero() && m.b.is_zero() && m.c.is_zero() && m.d.is_zero(); }

inline bool agrees_with(const QMat& x, const QMat& y) {
    return x.a.agrees_with(y.a) && x.b.agrees_with(y.b) && x.c.agrees_with(y.c) && x.d.agrees_with(y.d);
}

/// Inverse via the adjugate; the determinant must be a Laurent unit.
inline QMat inverse(const QMat& m) {
    QSeries di = invert_laurent(m.det());
    return {mul(di, m.d), mul(di, -m.b), mul(di, -m.c), mul(di, m.a)};
}

/// Smallest entry window: (eps window, lambda window).
inline std::pair<int, int> window(const QMat& m) {
    int e = std::min({m.a.eps_window(), m.b.eps_window(), m.c.eps_window(), m.d.eps_window()});
    int l = std::min({m.a.lam_window(), m.b.lam_window(), m.c.lam_window(), m.d.lam_window()});
    return {e, l};
}

}  // namespace qdwork
