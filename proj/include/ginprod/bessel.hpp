#pragma once

#include "ginprod/errors.hpp"
#include "ginprod/real.hpp"

namespace ginprod {
namespace detail {

/// Ascending series, valid for all x > 0:
///   K0(x) = -(log(x/2) + gamma) I0(x) + sum_{k>=1} H_k (x^2/4)^k / (k!)^2.
/// Both pieces grow like e^x while K0 ~ e^{-x}, so the working precision is
/// raised by the 2x log10(e) digits the cancellation destroys.
inline Real bessel_k0_ascending(const Real& x, int digits) {
    double xd = x.to_double();
    int wd = digits + 12 + static_cast<int>(0.87 * xd);
    Real xe = x.to_digits(wd);
    Real q = ldexp2(xe * xe, -2); // x^2/4
    Real i0 = Real::from_long(1, wd);
    Real hsum(wd);
    Real term = Real::from_long(1, wd);
    Real harmonic(wd);
    Real goal = pow10(-(wd - 2), wd);
    for (long k = 1; k < 100000; ++k) {
        term *= q / (static_cast<long>(k) * static_cast<long>(k));
        harmonic += Real::from_long(1, wd) / k;
        hsum += term * harmonic;
        i0 += term;
        if (term < goal * i0) break;
    }
    Real g = Real::euler_gamma(wd);
    Real res = hsum - (log(ldexp2(xe, -1)) + g) * i0;
    return res.to_digits(digits);
}

/// Large-x expansion K0(x) = sqrt(pi/(2x)) e^{-x} sum_k t_k,
/// t_0 = 1, t_k = -t_{k-1} (2k-1)^2 / (8 k x); optimal truncation leaves a
/// relative error ~e^{-2x}, so this branch requires x >~ 1.16 (P+5).
inline Real bessel_k0_asymptotic(const Real& x, int digits) {
    int wd = digits + 10;
    Real xe = x.to_digits(wd);
    Real sum = Real::from_long(1, wd);
    Real term = Real::from_long(1, wd);
    Real goal = pow10(-(digits + 4), wd);
    Real prev = abs(term);
    for (long k = 1; k < 100000; ++k) {
        term *= Real::from_long(-(2 * k - 1) * (2 * k - 1), wd) / (8L * k * xe);
        sum += term;
        Real mag = abs(term);
        if (mag < goal) break;
        if (mag > prev)
            throw convergence_error("bessel_k0: asymptotic series bottomed out before target");
        prev = mag;
    }
    Real pref = sqrt(Real::pi(wd) / ldexp2(xe, 1)) * exp(-xe);
    return (pref * sum).to_digits(digits);
}

inline double bessel_k0_crossover(int digits) { return 1.16 * (digits + 5); }

} // namespace detail

/// Modified Bessel function K0(x), x > 0.  Ascending series with a
/// cancellation-compensating precision boost below the crossover, large-x
/// asymptotic expansion above it.  K0 has a logarithmic singularity at 0;
/// evaluation at x = 0 is flagged rather than returning infinity.
inline Real bessel_k0(const Real& x, int digits = 0) {
    if (digits <= 0) digits = x.precision_digits();
    if (x.sign() < 0) throw domain_error("bessel_k0: requires x > 0");
    if (x.is_zero()) throw singularity_error("bessel_k0: logarithmic divergence at x = 0");
    if (x.to_double() < detail::bessel_k0_crossover(digits))
        return detail::bessel_k0_ascending(x, digits);
    return detail::bessel_k0_asymptotic(x, digits);
}

} // namespace ginprod
