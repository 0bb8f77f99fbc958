#pragma once

#include <vector>

#include "ginprod/errors.hpp"
#include "ginprod/real.hpp"

namespace ginprod {

/// Dense square matrix of Real, row major.  Just enough linear algebra for
/// small high-precision determinants and Pfaffians.
class SquareMatrix {
public:
    SquareMatrix() = default;
    SquareMatrix(int n, int digits) : n_(n), a_(static_cast<std::size_t>(n) * n, Real(digits)) {}

    int size() const { return n_; }
    Real& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Real& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    int n_ = 0;
    std::vector<Real> a_;
};

struct LogDet {
    Real log_abs;  ///< log |det|
    int sign = 0;  ///< -1, 0, +1
};

/// Pivoted LU determinant in log magnitude.
inline LogDet lu_logdet(SquareMatrix a) {
    int n = a.size();
    if (n == 0) return {Real(kMinDigits), 1};
    int digits = a.at(0, 0).precision_digits();
    Real log_abs(digits);
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        Real best = abs(a.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            Real v = abs(a.at(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best.is_zero()) return {Real(digits), 0};
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(col, c));
            sign = -sign;
        }
        const Real& d = a.at(col, col);
        log_abs += log(abs(d));
        if (d.sign() < 0) sign = -sign;
        for (int r = col + 1; r < n; ++r) {
            Real f = a.at(r, col) / d;
            if (f.is_zero()) continue;
            for (int c = col + 1; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
        }
    }
    return {log_abs, sign};
}

/// Matrix inverse by Gauss-Jordan with partial pivoting (n is tiny here;
/// used for determinant sensitivity estimates).
inline SquareMatrix inverse(SquareMatrix a) {
    int n = a.size();
    int digits = n ? a.at(0, 0).precision_digits() : kMinDigits;
    SquareMatrix inv(n, digits);
    for (int i = 0; i < n; ++i) inv.at(i, i) = Real::from_long(1, digits);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        Real best = abs(a.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            Real v = abs(a.at(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best.is_zero()) throw numerical_error("inverse: singular matrix");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a.at(piv, c), a.at(col, c));
                std::swap(inv.at(piv, c), inv.at(col, c));
            }
        Real d = a.at(col, col);
        for (int c = 0; c < n; ++c) { a.at(col, c) /= d; inv.at(col, c) /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Real f = a.at(r, col);
            if (f.is_zero()) continue;
            for (int c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

/// Pfaffian of an even-dimensional antisymmetric matrix by recursive
/// expansion along the first row.  Exponential in n; meant for the n <= 8
/// cross-check scale.
inline Real pfaffian(const SquareMatrix& a) {
    int n = a.size();
    if (n % 2 != 0) throw domain_error("pfaffian: dimension must be even");
    int digits = n ? a.at(0, 0).precision_digits() : kMinDigits;
    if (n == 0) return Real::from_long(1, digits);

    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;

    struct Rec {
        const SquareMatrix& m;
        int digits;
        Real run(std::vector<int>& live) {
            std::size_t n = live.size();
            if (n == 0) return Real::from_long(1, digits);
            Real acc(digits);
            int i = live[0];
            for (std::size_t p = 1; p < n; ++p) {
                int j = live[p];
                std::vector<int> rest;
                rest.reserve(n - 2);
                for (std::size_t q = 1; q < n; ++q)
                    if (q != p) rest.push_back(live[q]);
                Real sub = run(rest);
                Real term = m.at(i, j) * sub;
                if (p % 2 == 1)
                    acc += term;
                else
                    acc -= term;
            }
            return acc;
        }
    } rec{a, digits};
    return rec.run(idx);
}

} // namespace ginprod
