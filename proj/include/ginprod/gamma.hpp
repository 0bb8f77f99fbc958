#pragma once

#include <cmath>

#include "ginprod/bernoulli.hpp"
#include "ginprod/complex.hpp"
#include "ginprod/errors.hpp"

namespace ginprod {
namespace detail {

/// Shift threshold for the Stirling series: with Re z >= R the optimally
/// truncated remainder is ~exp(-2 pi R), so R = 0.37 * (digits + 5) delivers
/// the requested accuracy with the first omitted term as the error bound.
inline double stirling_shift_threshold(int digits) {
    return std::max(10.0, 0.37 * (digits + 5));
}

/// Sum of principal logs of z, z+1, ..., z+(n-1), all in the right half
/// plane.  The product is accumulated in one complex number and the branch
/// of its log is repaired with a winding count tracked in double precision
/// (each factor contributes |arg| < pi/2, so double tracking is ample).
inline Complex log_pochhammer_rising(const Complex& z, long n, int digits) {
    if (n <= 0) return Complex(Real(digits), Real(digits));
    if (n <= 3) {
        Complex acc{Real(digits), Real(digits)};
        for (long i = 0; i < n; ++i)
            acc += log(Complex(z.real() + i, z.imag()));
        return acc;
    }
    Complex prod{Real::from_long(1, digits), Real(digits)};
    double arg_sum = 0.0;
    double zr = z.real().to_double(), zi = z.imag().to_double();
    for (long i = 0; i < n; ++i) {
        prod *= Complex(z.real() + i, z.imag());
        arg_sum += std::atan2(zi, zr + static_cast<double>(i));
    }
    Complex lg = log(prod);
    double winding = (arg_sum - lg.imag().to_double()) / (2.0 * 3.14159265358979324);
    long k = std::lround(winding);
    if (k != 0) {
        Real twopi = ldexp2(Real::pi(digits), 1);
        lg = Complex(lg.real(), lg.imag() + twopi * k);
    }
    return lg;
}

inline Complex log_gamma_stirling(const Complex& z, int digits) {
    // assumes Re z >= shift threshold
    const auto& coef = stirling_coefficients(
        static_cast<std::size_t>(stirling_shift_threshold(digits) * 3.4) + 16, digits);
    Complex lg = (z - Complex(Real::from_string("0.5", digits), Real(digits))) * log(z) - z;
    Real half_log_2pi = (log(ldexp2(Real::pi(digits), 1))) / 2L;
    lg += Complex(half_log_2pi, Real(digits));

    Complex w = Complex(Real::from_long(1, digits), Real(digits)) / z;
    Complex w2 = w * w;
    Complex p = w;           // w^(2r-1)
    Complex tail{Real(digits), Real(digits)};
    double target = -(digits + 3) * 3.3219280948873623; // log2 of the absolute goal, relative to |lg|~1
    double scale = std::max(0.0, static_cast<double>(lg.real().exponent2()));
    double prev_mag = 1e300;
    for (std::size_t r = 0; r < coef.size(); ++r) {
        Complex term = coef[r] * p;
        tail += term;
        double mag = static_cast<double>(std::max(term.real().exponent2(), term.imag().exponent2()));
        if (term.real().is_zero() && term.imag().is_zero()) break;
        if (mag < target + scale) break;
        if (mag > prev_mag) {
            // divergent regime entered before reaching the goal: the shift
            // threshold was too small for this precision
            throw convergence_error("log_gamma: Stirling series bottomed out early");
        }
        prev_mag = mag;
        p *= w2;
    }
    return lg + tail;
}

} // namespace detail

/// Principal-branch complex log Gamma.  Stirling asymptotic series after an
/// argument shift into Re z >= max(10, 0.37 (P+5)); error bounded by the
/// first omitted term.  For Re z < 1/2 the reflection formula is applied;
/// there the branch is principal on the real axis and for moderate |Im z|.
inline Complex log_gamma(const Complex& z, int digits = 0) {
    if (digits <= 0) digits = z.precision_digits();
    const Real& x = z.real();
    const Real& y = z.imag();

    // pole guard: nonpositive integers
    Real near_int = abs(x - round_nearest(x));
    Real tol = pow10(-(digits / 2), digits);
    if (cmp(x, 1) < 0 && abs(y) < tol && near_int < tol && round_nearest(x).sign() <= 0)
        throw pole_error("log_gamma: argument within 10^(-P/2) of a nonpositive integer");

    Real half = Real::from_string("0.5", digits);
    if (x < half) {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        Complex one_minus(Real::from_long(1, digits) - x, -y);
        Complex lg1 = log_gamma(one_minus, digits);
        Real pi = Real::pi(digits);
        if (y.is_zero()) {
            Real s = sin(pi * x);
            Real la = log(pi) - log(abs(s));
            Complex res(la - lg1.real(), -lg1.imag());
            if (s.sign() < 0) res = Complex(res.real(), res.imag() + pi);
            return res;
        }
        Real px = pi * x, py = pi * y;
        Complex sinpz(sin(px) * cosh(py), cos(px) * sinh(py));
        return Complex(log(pi), Real(digits)) - log(sinpz) - lg1;
    }

    double need = detail::stirling_shift_threshold(digits);
    long n = 0;
    double xr = x.to_double();
    if (xr < need) n = static_cast<long>(std::ceil(need - xr));
    if (n == 0) return detail::log_gamma_stirling(z, digits);
    Complex shifted(x + n, y);
    return detail::log_gamma_stirling(shifted, digits) - detail::log_pochhammer_rising(z, n, digits);
}

/// log Gamma(x) for real x > 0.
inline Real log_gamma_real(const Real& x, int digits = 0) {
    if (digits <= 0) digits = x.precision_digits();
    if (x.sign() <= 0) throw domain_error("log_gamma_real: requires x > 0");
    return log_gamma(Complex(x, Real(digits)), digits).real();
}

/// Gamma(x) for real x > 0.
inline Real gamma_real(const Real& x, int digits = 0) {
    return exp(log_gamma_real(x, digits));
}

/// Digamma Psi(x) for x > 0: asymptotic series after shifting x above the
/// Stirling threshold, recurrence Psi(x) = Psi(x+1) - 1/x pulled back.
inline Real digamma(const Real& x, int digits = 0) {
    if (digits <= 0) digits = x.precision_digits();
    if (x.sign() <= 0) throw domain_error("digamma: requires x > 0");

    double need = detail::stirling_shift_threshold(digits);
    long n = 0;
    double xr = x.to_double();
    if (xr < need) n = static_cast<long>(std::ceil(need - xr));
    Real y = x + n;
    Real recur(digits);
    for (long i = 0; i < n; ++i) recur += 1L / (x + i);

    const auto& coef = detail::digamma_coefficients(
        static_cast<std::size_t>(need * 3.4) + 16, digits);
    Real inv = 1L / y;
    Real inv2 = inv * inv;
    Real p = inv2;
    Real res = log(y) - ldexp2(inv, -1);
    Real goal = pow10(-(digits + 3), digits) * abs(res);
    Real prev = abs(res);
    for (std::size_t r = 0; r < coef.size(); ++r) {
        Real term = coef[r] * p;
        res -= term;
        Real mag = abs(term);
        if (mag < goal) break;
        if (mag > prev)
            throw convergence_error("digamma: asymptotic series bottomed out early");
        prev = mag;
        p *= inv2;
    }
    return res - recur;
}

/// log G(N+1) = sum_{l=1}^{N-1} log l!  (Barnes G at positive integers).
inline Real log_barnes_g(long N, int digits) {
    if (N < 1) throw domain_error("log_barnes_g: requires N >= 1");
    Real total(digits);
    Real log_factorial(digits);
    for (long l = 1; l <= N - 1; ++l) {
        log_factorial += log(Real::from_long(l, digits));
        total += log_factorial;
    }
    return total;
}

/// zeta'(-1), computed once per (thread, precision) by a central difference
/// of mpfr's zeta at more than doubled working precision.
inline Real zeta_prime_minus1(int digits) {
    thread_local Real cache;
    thread_local int cache_digits = -1;
    if (cache_digits == digits) return cache;
    int wd = 2 * digits + 24;
    Real h = pow10(-(digits + 12), wd);
    Real a(wd), b(wd);
    Real arg = Real::from_long(-1, wd) + h;
    mpfr_zeta(a.raw(), arg.raw(), MPFR_RNDN);
    arg = Real::from_long(-1, wd) - h;
    mpfr_zeta(b.raw(), arg.raw(), MPFR_RNDN);
    cache = ((a - b) / ldexp2(h, 1)).to_digits(digits);
    cache_digits = digits;
    return cache;
}

} // namespace ginprod
