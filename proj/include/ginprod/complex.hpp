#pragma once

#include "ginprod/real.hpp"

namespace ginprod {

/// Complex number over Real.  Both components are kept at a common working
/// precision; mixed-precision construction widens the narrower part.
class Complex {
public:
    Complex() = default;

    explicit Complex(int digits) : re_(digits), im_(digits) {}

    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
        int d = std::max(re_.precision_digits(), im_.precision_digits());
        if (re_.precision_digits() != d) re_ = re_.to_digits(d);
        if (im_.precision_digits() != d) im_ = im_.to_digits(d);
    }

    explicit Complex(Real re) : Complex(std::move(re), Real(0)) {
        im_ = Real(re_.precision_digits());
    }

    const Real& real() const { return re_; }
    const Real& imag() const { return im_; }
    int precision_digits() const { return re_.precision_digits(); }

    Complex conj() const { return Complex(re_, -im_); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }

    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Complex operator*(const Complex& a, const Real& b) {
        return Complex(a.re_ * b, a.im_ * b);
    }
    friend Complex operator*(const Real& a, const Complex& b) { return b * a; }

    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re_ * b.re_ + b.im_ * b.im_;
        return Complex((a.re_ * b.re_ + a.im_ * b.im_) / d,
                       (a.im_ * b.re_ - a.re_ * b.im_) / d);
    }
    friend Complex operator/(const Complex& a, const Real& b) {
        return Complex(a.re_ / b, a.im_ / b);
    }

    Complex& operator+=(const Complex& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Complex& operator-=(const Complex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

    friend Real abs(const Complex& a) { return hypot(a.re_, a.im_); }
    friend Real norm(const Complex& a) { return a.re_ * a.re_ + a.im_ * a.im_; }
    friend Real arg(const Complex& a) { return atan2(a.im_, a.re_); }

    /// Principal branch: log|z| + i arg(z), arg in (-pi, pi].
    friend Complex log(const Complex& a) {
        return Complex(log(abs(a)) * 1L, arg(a));
    }

    friend Complex exp(const Complex& a) {
        Real m = exp(a.re_);
        return Complex(m * cos(a.im_), m * sin(a.im_));
    }

    friend Complex pow_long(const Complex& a, long n) {
        if (n < 0) {
            Complex one{Real::from_long(1, a.precision_digits()), Real(a.precision_digits())};
            return one / pow_long(a, -n);
        }
        Complex r{Real::from_long(1, a.precision_digits()), Real(a.precision_digits())};
        Complex base = a;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    std::string str(int n = 0) const {
        return "(" + re_.str(n) + (im_.sign() < 0 ? " - " : " + ") + abs(im_).str(n) + "i)";
    }

private:
    Real re_, im_;
};

} // namespace ginprod
