#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "ginprod/errors.hpp"

namespace ginprod {

/// Minimum working precision, in decimal digits, of any Real value.
inline constexpr int kMinDigits = 30;

/// Decimal digits -> binary precision, with a few guard bits so that decimal
/// round trips at the stated digit count are exact.
inline mpfr_prec_t bits_for_digits(int digits) {
    digits = std::max(digits, kMinDigits);
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

inline int digits_for_bits(mpfr_prec_t bits) {
    return static_cast<int>(std::floor((bits - 8) / 3.3219280948873623));
}

/// Arbitrary-precision real number with an explicit per-value working
/// precision.  Arithmetic rounds to the wider of the operand precisions, so
/// precision is preserved or widened through a computation, never silently
/// narrowed; narrowing requires an explicit to_digits() call.  Values are
/// immutable in the concurrency sense: all mutation is through the owning
/// object, and distinct Real objects never share storage.
class Real {
public:
    Real() { mpfr_init2(v_, bits_for_digits(kMinDigits)); mpfr_set_zero(v_, 1); }

    explicit Real(int digits) { mpfr_init2(v_, bits_for_digits(digits)); mpfr_set_zero(v_, 1); }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }

    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    // --- construction helpers ---

    static Real from_long(long v, int digits) {
        Real r(digits);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }

    static Real from_double(double v, int digits) {
        Real r(digits);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }

    static Real from_string(const std::string& s, int digits) {
        Real r(digits);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw domain_error("Real::from_string: unparsable literal '" + s + "'");
        return r;
    }

    static Real pi(int digits) {
        Real r(digits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    static Real euler_gamma(int digits) {
        Real r(digits);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }

    static Real log2_const(int digits) {
        Real r(digits);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }

    /// 2^e, exact.
    static Real pow2(long e, int digits) {
        Real r(digits);
        mpfr_set_si(r.v_, 1, MPFR_RNDN);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    // --- precision ---

    int precision_digits() const { return digits_for_bits(mpfr_get_prec(v_)); }
    mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_); }

    /// Same value re-rounded at a new working precision (explicit widen/narrow).
    Real to_digits(int digits) const {
        Real r(digits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    // --- queries ---

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Floor of log2 |x|; 0 for x == 0.
    long exponent2() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    bool fits_long() const { return mpfr_fits_slong_p(v_, MPFR_RNDN) != 0; }

    bool is_integer() const { return mpfr_integer_p(v_) != 0; }

    /// Decimal string with n significant digits (default: full precision).
    std::string str(int n = 0) const {
        if (is_nan()) return "nan";
        if (is_inf()) return sign() < 0 ? "-inf" : "inf";
        if (n <= 0) n = precision_digits();
        char* raw = nullptr;
        mpfr_asprintf(&raw, "%.*Rg", n, v_);
        std::string out(raw);
        mpfr_free_str(raw);
        return out;
    }

    // --- arithmetic (result at the wider operand precision) ---

    friend Real operator+(const Real& a, const Real& b) {
        Real r = result_for(a, b);
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r = result_for(a, b);
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r = result_for(a, b);
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r = result_for(a, b);
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    // long mixed ops keep the Real operand's precision
    friend Real operator+(const Real& a, long b) { Real r(a); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(const Real& a, long b) { Real r(a); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator-(long a, const Real& b) { Real r(b); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, long b) { Real r(a); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b) { Real r(a); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator/(long a, const Real& b) { Real r(b); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    friend int cmp(const Real& a, long b) { return mpfr_cmp_si(a.v_, b); }

    // --- elementary functions ---

    friend Real abs(const Real& a) { Real r(a); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sqrt(const Real& a) { Real r(a); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real exp(const Real& a) { Real r(a); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real log(const Real& a) { Real r(a); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real log1p(const Real& a) { Real r(a); mpfr_log1p(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real expm1(const Real& a) { Real r(a); mpfr_expm1(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sin(const Real& a) { Real r(a); mpfr_sin(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real cos(const Real& a) { Real r(a); mpfr_cos(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real tanh(const Real& a) { Real r(a); mpfr_tanh(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sinh(const Real& a) { Real r(a); mpfr_sinh(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real cosh(const Real& a) { Real r(a); mpfr_cosh(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real atan2(const Real& y, const Real& x) {
        Real r = result_for(y, x);
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r = result_for(a, b);
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r = result_for(a, b);
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow_long(const Real& a, long n) {
        Real r(a);
        mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real floor(const Real& a) { Real r(a); mpfr_floor(r.v_, a.v_); return r; }
    friend Real round_nearest(const Real& a) { Real r(a); mpfr_rint(r.v_, a.v_, MPFR_RNDN); return r; }
    /// a * 2^e, exact.
    friend Real ldexp2(const Real& a, long e) { Real r(a); mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN); return r; }

    friend const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
    friend const Real& min(const Real& a, const Real& b) { return a < b ? a : b; }

    /// log10 |x| as a double, -inf for 0.  Cheap magnitude probe.
    friend double log10_magnitude(const Real& a) {
        if (a.is_zero()) return -std::numeric_limits<double>::infinity();
        long e2;
        double m = mpfr_get_d_2exp(&e2, a.v_, MPFR_RNDN);
        return std::log10(std::fabs(m)) + e2 * 0.30102999566398120;
    }

    /// Access for interop with mpfr-level code (tests, oracles).
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    static Real result_for(const Real& a, const Real& b) {
        Real r;
        mpfr_set_prec(r.v_, std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
        return r;
    }

    mpfr_t v_;
};

/// 10^-digits at a working precision wide enough to represent it.
inline Real pow10(long e, int digits) {
    Real ten = Real::from_long(10, digits);
    return pow_long(ten, e);
}

} // namespace ginprod
