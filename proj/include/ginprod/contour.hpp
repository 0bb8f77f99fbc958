#pragma once

#include <cmath>
#include <functional>

#include "ginprod/complex.hpp"
#include "ginprod/errors.hpp"

namespace ginprod {

/// Record of a vertical Mellin-Barnes contour actually used: the line
/// Re s = abscissa, summed with trapezoidal step `step` out to
/// |Im s| <= truncation, at `precision` working digits.  The abscissa must
/// separate the left from the right pole group of the integrand; callers
/// supply it with that knowledge.
struct ContourSpec {
    Real abscissa;
    Real truncation;
    Real step;
    int precision = 0;
};

struct LineIntegralOptions {
    int target_digits = 40;     ///< relative accuracy goal 10^-target
    double strip_halfwidth = 0.5; ///< distance from the line to the nearest pole
    double decay_rate = 3.0;    ///< |f(c+it)| <= C e^{-decay |t|} |t|^poly_power
    double poly_power = 0.0;
    double log10_bound_const = 0.0; ///< log10 C of the decay bound
    double sigma_hint = 0.0;    ///< peak width for saddle-shaped integrands (0: none)
    int max_halvings = 6;
    int guard_digits = 12;
    int max_precision_boosts = 3;
};

struct LineIntegralResult {
    Real value;           ///< (1/(2 pi)) * integral of f over the line
    Real error_estimate;
    ContourSpec contour;
    long evaluations = 0;
};

namespace detail {

/// Truncation estimate: smallest T with
/// decay*T - poly*log(T) >= (target + 6 + bound10) * log(10).
inline double contour_truncation(double decay, double poly, double digits10) {
    double rhs = digits10 * 2.302585092994046;
    double T = std::max(5.0, rhs / decay);
    for (int i = 0; i < 40; ++i) {
        double nt = (rhs + poly * std::log(std::max(T, 2.0))) / decay;
        nt = std::max(nt, 5.0 / decay);
        if (std::fabs(nt - T) < 1e-9 * T) { T = nt; break; }
        T = nt;
    }
    return std::max(T, 1.0);
}

} // namespace detail

/// Trapezoidal integration of (1/(2 pi)) \int_{-inf}^{inf} f(c + i t) dt for
/// integrands with the conjugate symmetry f(conj s) = conj f(s), so the
/// result is real and only t >= 0 is evaluated.  The step is halved (nodes
/// reused) until two successive levels agree to the target; the tail is
/// extended adaptively past the a-priori truncation bound until the terms
/// die.  Severe cancellation triggers a working-precision boost and restart.
/// The symmetry itself is spot-checked at two nodes per call.
template <class F>
LineIntegralResult integrate_vertical_line(F&& f, const Real& c_in, const LineIntegralOptions& opt) {
    const double ln10 = 2.302585092994046;
    long evals = 0;

    int wd = opt.target_digits + opt.guard_digits;
    for (int boost = 0; boost <= opt.max_precision_boosts; ++boost) {
        const Real c = c_in.to_digits(wd);
        const Real zero(wd);

        double Test = detail::contour_truncation(opt.decay_rate, opt.poly_power,
                                                 opt.target_digits + 6 + opt.log10_bound_const);
        double h_pole = 2.0 * 3.14159265358979324 * opt.strip_halfwidth /
                        ((opt.target_digits + 6) * ln10);
        double h0 = 2.0 * h_pole;
        if (opt.sigma_hint > 0) h0 = std::min(h0, 0.7 * opt.sigma_hint);
        h0 = std::min(h0, Test / 12.0);

        const double t_cap = std::max(4.0 * Test, 40.0 / opt.decay_rate);
        Real peak(wd);         // largest |Re f| seen
        Real abs_accum(wd);    // sum of |Re f| over all nodes (cancellation probe)
        Real cut_factor = pow10(-(opt.target_digits + 8), wd);
        bool capped = false;

        // The a-priori bound overshoots badly for saddle-shaped integrands
        // (the polynomial factor never bites), so a long-enough quiet run
        // past a shorter gate is also accepted.
        double early_gate = opt.sigma_hint > 0 ? 10.0 * opt.sigma_hint + 5.0 : 0.45 * Test;

        // Sum of Re f(c + i (offset + n*h)) for n = 0, 1, ... with adaptive tail.
        auto sweep = [&](const Real& h, const Real& offset, double* t_reached) -> Real {
            Real s(wd);
            int quiet = 0;
            double hd = h.to_double();
            double t0 = offset.to_double();
            long nmax = static_cast<long>((t_cap - t0) / hd) + 1;
            for (long n = 0; n <= nmax; ++n) {
                Real t = offset + h * n;
                Complex val = f(Complex(c, t));
                ++evals;
                Real re = val.real();
                s += re;
                Real m = abs(re);
                abs_accum += m;
                if (m > peak) peak = m;
                double td = t0 + n * hd;
                if (!peak.is_zero() && m < cut_factor * peak) {
                    ++quiet;
                    if ((td > 0.8 * Test && quiet >= 6) || (td > early_gate && quiet >= 14)) {
                        if (t_reached) *t_reached = td;
                        return s;
                    }
                } else {
                    quiet = 0;
                }
            }
            capped = true;
            if (t_reached) *t_reached = t_cap;
            return s;
        };

        double t_reached = 0;
        Real h = Real::from_double(h0, wd);
        Real base = sweep(h, zero, &t_reached);
        {
            // n = 0 term enters the trapezoid with weight 1/2
            Complex f0 = f(Complex(c, zero));
            ++evals;
            base -= ldexp2(f0.real(), -1);
        }
        Real I = ldexp2(h * base, 1); // 2 h * (f(c)/2 + sum_{n>=1})
        if (capped)
            throw convergence_error("integrate_vertical_line: tail did not decay within cap");

        Real diff(wd);
        bool converged = false;
        Real tol = pow10(-opt.target_digits, wd);
        for (int lev = 0; lev < opt.max_halvings; ++lev) {
            Real mids = sweep(h, ldexp2(h, -1), &t_reached);
            Real I2 = ldexp2(I, -1) + h * mids;
            h = ldexp2(h, -1);
            diff = abs(I2 - I);
            I = I2;
            if (capped)
                throw convergence_error("integrate_vertical_line: tail did not decay within cap");
            if (!I.is_zero() && diff <= tol * abs(I)) {
                converged = true;
                break;
            }
        }

        // cancellation probe: digits destroyed by oscillation
        double lost = 0.0;
        if (!I.is_zero() && !abs_accum.is_zero())
            lost = log10_magnitude(abs_accum * h) - log10_magnitude(I);
        if (lost > opt.guard_digits - 4 && boost < opt.max_precision_boosts) {
            wd = opt.target_digits + opt.guard_digits + static_cast<int>(lost) + 8;
            continue; // restart with more precision
        }
        if (!converged)
            throw convergence_error("integrate_vertical_line: halving cap reached before agreement");

        // conjugate-symmetry spot check
        for (double tt : {h.to_double() * 3, t_reached * 0.3}) {
            Real t = Real::from_double(tt, wd);
            Complex up = f(Complex(c, t));
            Complex dn = f(Complex(c, -t));
            evals += 2;
            Real asym = abs(up - dn.conj());
            Real scale = max(abs(up), peak * cut_factor);
            if (!scale.is_zero() && asym > pow10(-(opt.target_digits / 2), wd) * scale)
                throw numerical_error("integrate_vertical_line: integrand is not conjugate-symmetric");
        }

        Real inv2pi = 1L / ldexp2(Real::pi(wd), 1);
        LineIntegralResult out;
        out.value = (I * inv2pi).to_digits(opt.target_digits + 2);
        out.error_estimate = (diff * inv2pi).to_digits(opt.target_digits + 2);
        out.contour = ContourSpec{c, Real::from_double(t_reached, wd), h, wd};
        out.evaluations = evals;
        return out;
    }
    throw convergence_error("integrate_vertical_line: precision boosts exhausted");
}

} // namespace ginprod
