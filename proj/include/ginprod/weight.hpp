#pragma once

#include <cmath>

#include "ginprod/contour.hpp"
#include "ginprod/gamma.hpp"

namespace ginprod {

/// Density query for the product of m independent standard normals.
struct WeightQuery {
    int m = 1;
    Real lambda;
};

namespace detail {

inline double digamma_double(double x) {
    double r = 0.0;
    while (x < 8.0) { r -= 1.0 / x; x += 1.0; }
    double f = 1.0 / (x * x);
    return r + std::log(x) - 0.5 / x -
           f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f / 132.0))));
}

/// Inverse digamma by Newton; clamped to [lo, inf).
inline double digamma_inverse(double y, double lo) {
    double x = y >= -2.22 ? std::exp(y) + 0.5 : -1.0 / (y + 0.5772156649015329);
    x = std::max(x, 1e-3);
    for (int i = 0; i < 40; ++i) {
        double fx = digamma_double(x) - y;
        double deriv = 1.0 / x + 1.0 / (2 * x * x); // trigamma to this order
        double nx = x - fx / deriv;
        if (nx <= 0) nx = x / 2;
        if (std::fabs(nx - x) < 1e-12 * std::fabs(x) + 1e-15) { x = nx; break; }
        x = nx;
    }
    return std::max(x, lo);
}

/// Residue sum for w_m: the inverse-Mellin contour closed over the left
/// poles s = -n of Gamma^m(s).  With z = lambda^2/2^m and eps the local
/// variable at the order-m pole,
///   eps^m Gamma^m(-n+eps) = ((-1)^n/n!)^m exp(m G_n(eps)),
///   G_n(eps) = psi(n+1) eps + sum_{k>=2} [(-1)^k zeta(k) + H_n^(k)] eps^k / k,
/// and the residue is z^n ((-1)^n/n!)^m [eps^{m-1}] exp(-eps log z + m G_n(eps)).
/// Rapidly convergent for z < 1; used when log z is well below 0, where a
/// fixed vertical line would need a cancellation guard growing like |log z|.
inline Real weight_density_residue_series(int m, const Real& z, int digits) {
    int wd = digits + 12;
    Real logz = log(z.to_digits(wd));
    int K = m - 1; // highest eps-order needed

    // zeta(2..K) once
    std::vector<Real> zeta_k(std::max(K + 1, 2), Real(wd));
    for (int k = 2; k <= K; ++k)
        mpfr_zeta_ui(zeta_k[k].raw(), static_cast<unsigned long>(k), MPFR_RNDN);

    Real gammac = Real::euler_gamma(wd);
    std::vector<Real> Hk(static_cast<std::size_t>(K) + 1, Real(wd)); // H_n^(k), updated per n
    Real sum(wd);
    Real zn = Real::from_long(1, wd);       // z^n
    Real inv_fact_m = Real::from_long(1, wd); // (1/n!)^m
    Real goal = pow10(-(digits + 6), wd);

    std::vector<Real> a(static_cast<std::size_t>(K) + 1, Real(wd)); // series coefficients
    std::vector<Real> e(static_cast<std::size_t>(K) + 1, Real(wd)); // exp-series coefficients

    for (long n = 0; n < 10000; ++n) {
        if (n > 0) {
            zn *= z;
            Real nr = Real::from_long(n, wd);
            Real inv_n = 1L / nr;
            Real p = inv_n;
            for (int k = 1; k <= K; ++k) {
                Hk[static_cast<std::size_t>(k)] += p;
                p *= inv_n;
            }
            Real nf = pow_long(nr, m);
            inv_fact_m /= nf;
        }

        Real coeff(wd);
        if (K == 0) {
            coeff = Real::from_long(1, wd);
        } else {
            a[1] = Real::from_long(m, wd) * (Hk[1] - gammac) - logz;
            for (int k = 2; k <= K; ++k) {
                Real g = zeta_k[k];
                if (k % 2 != 0) g = -g;
                g += Hk[static_cast<std::size_t>(k)];
                a[static_cast<std::size_t>(k)] = Real::from_long(m, wd) * g / static_cast<long>(k);
            }
            // exp of a power series: e_j = (1/j) sum_{i=1..j} i a_i e_{j-i}
            e[0] = Real::from_long(1, wd);
            for (int j = 1; j <= K; ++j) {
                Real acc(wd);
                for (int i = 1; i <= j; ++i)
                    acc += Real::from_long(i, wd) * a[static_cast<std::size_t>(i)] *
                           e[static_cast<std::size_t>(j - i)];
                e[static_cast<std::size_t>(j)] = acc / static_cast<long>(j);
            }
            coeff = e[static_cast<std::size_t>(K)];
        }

        Real term = zn * inv_fact_m * coeff;
        if ((n * m) % 2 != 0) term = -term;
        sum += term;
        if (n > 2 && abs(term) < goal * max(abs(sum), Real::from_long(1, wd)))
            break;
    }
    return sum;
}

} // namespace detail

/// Density w_m(lambda) of a product of m independent standard normal
/// variables, evaluated through its inverse Mellin transform
///   w_m(lambda) = (2 pi)^{-m/2} (1/(2 pi i)) \int (lambda^2/2^m)^{-s}
///                 Gamma^m(s) ds  on  Re s = c > 0.
/// The density is even; the implementation works with |lambda|.  For m >= 2
/// it diverges logarithmically at the origin, which is flagged.  The
/// contour abscissa follows the Gamma^m saddle for large arguments; deep in
/// the left tail of log z the line is traded for the residue sum over the
/// left poles (same integral, contour closed).
inline Real weight_density(const WeightQuery& q, int target_digits) {
    if (q.m < 1) throw domain_error("weight_density: m >= 1 required");
    Real lam = abs(q.lambda);
    if (lam.is_zero()) {
        if (q.m == 1) {
            int wd = target_digits + 8;
            return (1L / sqrt(ldexp2(Real::pi(wd), 1))).to_digits(target_digits);
        }
        throw singularity_error("weight_density: logarithmic singularity at lambda = 0 for m >= 2");
    }

    int wd = target_digits + 10;
    Real z = ldexp2(lam.to_digits(wd) * lam.to_digits(wd), -q.m);
    double Ld = 2.0 * std::log(std::fabs(lam.to_double())) - q.m * 0.6931471805599453;

    Real pref = pow(ldexp2(Real::pi(wd), 1), Real::from_double(-0.5 * q.m, wd));

    if (Ld < -3.0) {
        Real s = detail::weight_density_residue_series(q.m, z, target_digits);
        return (pref.to_digits(s.precision_digits()) * s).to_digits(target_digits);
    }

    double c_d = detail::digamma_inverse(Ld / q.m, 1.5);
    Real c = Real::from_double(c_d, wd);
    Real logz = log(z);

    auto integrand = [&](const Complex& s) -> Complex {
        Complex lg = log_gamma(s, wd);
        Complex expo = Complex(lg.real() * q.m - s.real() * logz,
                               lg.imag() * q.m - s.imag() * logz);
        return exp(expo);
    };

    LineIntegralOptions opt;
    opt.target_digits = target_digits + 2;
    opt.strip_halfwidth = std::min(c_d, 2.5);
    opt.decay_rate = q.m * 3.14159265358979324 / 2.0;
    opt.poly_power = q.m * (c_d - 0.5);
    opt.log10_bound_const = std::max(0.0, (-c_d * Ld + q.m * std::lgamma(c_d)) * 0.4342944819);
    double psi1 = 1.0 / c_d + 1.0 / (2 * c_d * c_d);
    opt.sigma_hint = 1.0 / std::sqrt(q.m * psi1);

    auto res = integrate_vertical_line(integrand, c, opt);
    return (pref * res.value).to_digits(target_digits);
}

} // namespace ginprod
