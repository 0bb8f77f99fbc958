#pragma once

#include <cmath>

#include "ginprod/bessel.hpp"
#include "ginprod/contour.hpp"
#include "ginprod/gamma.hpp"
#include "ginprod/quadrature.hpp"
#include "ginprod/rng.hpp"

namespace ginprod {

struct AlphaEntry {
    Real value;
    Real error_estimate;
    ContourSpec contour;
};

/// Determinant entry g(m, j, k): the Meijer-G value
///   G^{m+1,m}_{m+1,m+1}( 1 | 5/2-j,...,5/2-j,2 ; 1,1+k,...,1+k )
/// evaluated through its Mellin-Barnes form
///   -(1/(2 pi i)) \int_C (Gamma(k-s) Gamma(j-1/2+s))^m / s ds,
/// with C the vertical line Re s = c, c strictly between the rightmost
/// left pole 1/2-j (clamped at -1) and the pole at 0.  The default
/// abscissa sits midway, c = -min(j-1/2, 1)/2; an override is accepted for
/// contour-robustness checks.  Output is real; conjugate symmetry of the
/// integrand is asserted inside the line integrator and the imaginary part
/// is discarded by construction of the symmetric sum.
inline AlphaEntry alpha_entry(int m, int j, int k, int target_digits,
                              double abscissa_override = 0.0) {
    if (m < 1 || j < 1 || k < 1)
        throw domain_error("alpha_entry: m, j, k must all be >= 1");
    double lo = std::max(0.5 - j, -1.0);
    double c_d = abscissa_override != 0.0 ? abscissa_override : -std::min(j - 0.5, 1.0) / 2.0;
    if (!(lo < c_d && c_d < 0.0))
        throw domain_error("alpha_entry: contour abscissa outside the pole-separating interval");

    int wd = target_digits + 12;
    Real c = Real::from_double(c_d, wd);
    Real half = Real::from_string("0.5", wd);
    Real kk = Real::from_long(k, wd);
    Real jj = Real::from_long(j, wd);

    auto integrand = [&](const Complex& s) -> Complex {
        Complex lg1 = log_gamma(Complex(kk - s.real(), -s.imag()), wd);
        Complex lg2 = log_gamma(Complex(jj - half + s.real(), s.imag()), wd);
        Complex lg = (lg1 + lg2) * Real::from_long(m, wd);
        return exp(lg) / s;
    };

    LineIntegralOptions opt;
    opt.target_digits = target_digits;
    opt.strip_halfwidth = std::min({-c_d, (j - 0.5) + c_d, 1.0});
    opt.decay_rate = m * 3.14159265358979324;
    opt.poly_power = m * (k + j - 1.5) - 1.0;
    opt.log10_bound_const = 0.8 * m;

    auto li = integrate_vertical_line(integrand, c, opt);
    return AlphaEntry{-li.value, li.error_estimate, li.contour};
}

/// Odd-N determinant entry nu(m, j) = Gamma(j - 1/2)^m.  The 2- and
/// 2pi-powers of the raw product-normal moment are carried by the
/// determinant prefactor, not here.
inline Real nu_entry(int m, int j, int digits = 40) {
    if (m < 1 || j < 1) throw domain_error("nu_entry: m, j must be >= 1");
    int wd = digits + 8;
    Real half = Real::from_string("0.5", wd);
    return exp(Real::from_long(m, wd) * log_gamma_real(Real::from_long(j, wd) - half, wd))
        .to_digits(digits);
}

namespace detail {

/// Closed-form weights for the quadrature oracles: standard normal for
/// m = 1, K0/pi for m = 2.  Deliberately not routed through weight_density
/// so the oracle stays independent of the Mellin-Barnes path.
inline Real oracle_weight(int m, const Real& x, int wd) {
    if (m == 1) {
        Real inv_sqrt_2pi = 1L / sqrt(ldexp2(Real::pi(wd), 1));
        return inv_sqrt_2pi * exp(-ldexp2(x * x, -1));
    }
    if (m == 2) {
        if (x.is_zero()) throw singularity_error("oracle_weight: K0 singular at 0");
        return bessel_k0(abs(x), wd) / Real::pi(wd);
    }
    throw domain_error("quadrature oracle supports m in {1, 2} only");
}

/// \int_x^infty y^pow w_m(y) dy for x >= 0.
inline Real oracle_upper_moment(int m, long pow, const Real& x, int digits) {
    auto f = [&](const Real& y) { return pow_long(y, pow) * oracle_weight(m, y, digits + 8); };
    return exp_sinh(f, x, digits).value;
}

/// \int_0^x y^pow w_m(y) dy.
inline Real oracle_lower_moment(int m, long pow, const Real& x, int digits) {
    if (x.is_zero()) return Real(digits);
    auto f = [&](const Real& y) { return pow_long(y, pow) * oracle_weight(m, y, digits + 8); };
    return tanh_sinh(f, Real(digits + 8), x, digits).value;
}

} // namespace detail

/// Brute-force oracle for the even-odd moment entries
///   alpha_{2j-1,2k} = 2 < x^{2j-2} y^{2k-1} chi_{y>x} >
///                   = 4 \int_0^inf dx x^{2j-2} w_m(x)
///                       \int_x^inf dy y^{2k-1} w_m(y)
/// (evenness folds the x < 0 half onto x > 0 with the same one-sided inner
/// integral), by direct nested double-exponential quadrature of the
/// closed-form weights (m = 1: Gaussian, m = 2: K0/pi).  Related to
/// alpha_entry by alpha_{2j-1,2k} = 2^{(j+k-1/2)m} (2 pi)^{-m} g(m,j,k).
inline Real alpha_oracle_quadrature(int m, int j, int k, int digits = 13) {
    if (m != 1 && m != 2)
        throw domain_error("alpha_oracle_quadrature: oracle restricted to m in {1, 2}");
    if (j < 1 || k < 1) throw domain_error("alpha_oracle_quadrature: j, k >= 1");
    int wd = digits + 10;
    auto outer = [&](const Real& x) {
        return pow_long(x, 2 * j - 2) * detail::oracle_weight(m, x, wd) *
               detail::oracle_upper_moment(m, 2 * k - 1, x, digits + 4);
    };
    Real split = Real::from_long(3, wd);
    Real head = tanh_sinh(outer, Real(wd), split, digits).value;
    Real tail = exp_sinh(outer, split, digits).value;
    return ldexp2(head + tail, 2).to_digits(digits + 4);
}

/// General-parity moment entry
///   alpha_{j,k} = < x^{j-1} y^{k-1} sgn(y - x) >,  x, y ~ product-normal,
/// assembled from one-sided quadratures with no analytic shortcuts, so the
/// checkerboard vanishing for j + k even comes out of honest numerical
/// cancellation.  Oracle-grade (m in {1,2}).
inline Real alpha_full_quadrature(int m, int j, int k, int digits = 12) {
    if (m != 1 && m != 2)
        throw domain_error("alpha_full_quadrature: oracle restricted to m in {1, 2}");
    int wd = digits + 10;

    auto one_sided = [&](int a, int b) -> Real {
        // A_{a,b} = \int_R x^{a-1} w(x) \int_x^inf y^{b-1} w(y) dy dx, split at 0
        Real Mb = detail::oracle_upper_moment(m, b - 1, Real(wd), digits + 4); // int_0^inf
        Real Ma = detail::oracle_upper_moment(m, a - 1, Real(wd), digits + 4);

        auto upper_piece = [&](const Real& x) {
            return pow_long(x, a - 1) * detail::oracle_weight(m, x, wd) *
                   detail::oracle_upper_moment(m, b - 1, x, digits + 3);
        };
        auto lower_piece = [&](const Real& x) {
            return pow_long(x, a - 1) * detail::oracle_weight(m, x, wd) *
                   detail::oracle_lower_moment(m, b - 1, x, digits + 3);
        };
        Real split = Real::from_long(3, wd);
        Real P1 = tanh_sinh(upper_piece, Real(wd), split, digits).value +
                  exp_sinh(upper_piece, split, digits).value;
        Real D = tanh_sinh(lower_piece, Real(wd), split, digits).value +
                 exp_sinh(lower_piece, split, digits).value;
        Real P2 = Ma * Mb;
        if ((b - 1) % 2 == 0)
            P2 += D;
        else
            P2 -= D;
        if ((a - 1) % 2 == 0) return P1 + P2;
        return P1 - P2;
    };

    Real A_jk = one_sided(j, k);
    Real A_kj = one_sided(k, j);
    return (A_jk - A_kj).to_digits(digits + 4);
}

struct ProductFormulaResult {
    Real value;
    Real std_error;
    long samples = 0;
    bool exact = false;
};

/// p_{2,2} for a product of m Gaussian matrices through the rank-one route
///   p = (1/2) (pi/2)^{(m-1)/2} < sqrt(x^2 + y^2) >,
/// with x, y independent products of m-1 standard normals.  Exact for
/// m = 1 (point mass) and m = 2 (polar-coordinates quadrature); Monte
/// Carlo with per-sample split streams otherwise.
inline ProductFormulaResult alpha12_product_formula(int m, long samples, std::uint64_t seed,
                                                    int digits = 40) {
    if (m < 1) throw domain_error("alpha12_product_formula: m >= 1");
    int wd = digits + 8;
    if (m == 1) {
        Real v = 1L / sqrt(Real::from_long(2, wd));
        return {v.to_digits(digits), Real(digits), 0, true};
    }
    if (m == 2) {
        // <sqrt(x^2+y^2)> over the plane Gaussian = int_0^inf r^2 e^{-r^2/2} dr
        auto f = [&](const Real& r) { return r * r * exp(-ldexp2(r * r, -1)); };
        Real mean_r = exp_sinh(f, Real(wd), digits).value;
        Real v = ldexp2(sqrt(ldexp2(Real::pi(wd), -1)) * mean_r, -1);
        return {v.to_digits(digits), Real(digits), 0, true};
    }
    if (samples < 10000)
        throw domain_error("alpha12_product_formula: Monte Carlo path needs samples >= 10^4");
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < samples; ++i) {
        SplitStream rng(seed, static_cast<std::uint64_t>(i));
        double x = 1.0, y = 1.0;
        for (int l = 0; l < m - 1; ++l) x *= rng.next_gaussian();
        for (int l = 0; l < m - 1; ++l) y *= rng.next_gaussian();
        double v = std::sqrt(x * x + y * y);
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / samples;
    double var = std::max(0.0, sumsq / samples - mean * mean) / (samples - 1.0);
    Real pref = ldexp2(pow(ldexp2(Real::pi(wd), -1), Real::from_double(0.5 * (m - 1), wd)), -1);
    ProductFormulaResult out;
    out.value = (pref * Real::from_double(mean, wd)).to_digits(digits);
    out.std_error = (pref * Real::from_double(std::sqrt(var), wd)).to_digits(digits);
    out.samples = samples;
    return out;
}

} // namespace ginprod
