#include "test_util.hpp"

#include "ginprod/bessel.hpp"
#include "ginprod/quadrature.hpp"

using namespace ginprod;
using testutil::R;

TEST_CASE("K0(1) against the frozen series-oracle value", "[bessel]") {
    // 30 digits computed twice independently before the implementation
    Real expect = R("0.421024438240708333335627379213", 40);
    testutil::check_close_abs(bessel_k0(Real::from_long(1, 40), 40), expect, 28);
}

TEST_CASE("K0 against the cosh integral representation", "[bessel]") {
    // K0(x) = \int_0^inf exp(-x cosh t) dt, an algebraically unrelated route
    int P = 30;
    for (double x : {1.0, 2.7, 0.2}) {
        Real xr = Real::from_double(x, P + 10);
        auto f = [&](const Real& t) { return exp(-xr * cosh(t)); };
        Real ref = exp_sinh(f, Real(P + 10), P).value;
        testutil::check_close_rel(bessel_k0(Real::from_double(x, P), P), ref, P - 4);
    }
}

TEST_CASE("K0 integrates to pi/2 over (0, inf)", "[bessel]") {
    int P = 30;
    auto f = [&](const Real& x) { return bessel_k0(x, P + 6); };
    Real head = tanh_sinh(f, Real(P + 6), Real::from_long(1, P + 6), P).value;
    Real tail = exp_sinh(f, Real::from_long(1, P + 6), P).value;
    testutil::check_close_abs(head + tail, ldexp2(Real::pi(P + 6), -1), P - 4);
}

TEST_CASE("K0 satisfies its ODE under finite differences", "[bessel]") {
    // x K0'' + K0' - x K0 = 0, probed at step 10^(-P/4) with tolerance 10^(-P/2)
    int P = 40;
    int wd = 70; // headroom so the difference quotients are limited by h, not rounding
    Real h = pow10(-P / 4, wd);
    // sampled at x >= 1 where the K0 derivatives entering the h^2 truncation
    // term are O(1), matching the step/tolerance exponent pairing
    for (double x : {1.0, 2.0, 5.0, 10.0}) {
        Real xr = Real::from_double(x, wd);
        Real f0 = bessel_k0(xr, wd);
        Real fp = bessel_k0(xr + h, wd);
        Real fm = bessel_k0(xr - h, wd);
        Real d1 = ldexp2((fp - fm) / h, -1);
        Real d2 = (fp - ldexp2(f0, 1) + fm) / (h * h);
        Real residual = xr * d2 + d1 - xr * f0;
        INFO("x = " << x << " residual = " << residual.str(4));
        CHECK(abs(residual) <= pow10(-P / 2, wd));
    }
}

TEST_CASE("K0 domain handling", "[bessel]") {
    CHECK_THROWS_AS(bessel_k0(Real(40), 40), singularity_error);
    CHECK_THROWS_AS(bessel_k0(Real::from_long(-1, 40), 40), domain_error);
    // the log singularity is approached, not flagged, for small positive x
    CHECK(bessel_k0(pow10(-20, 40), 40) > Real::from_long(40, 40));
}

TEST_CASE("ascending and asymptotic branches agree across the crossover", "[bessel]") {
    int P = 35;
    double xc = detail::bessel_k0_crossover(P);
    for (double x : {xc + 0.5, xc + 4.0}) {
        Real xr = Real::from_double(x, P + 10);
        Real a = detail::bessel_k0_ascending(xr, P);
        Real b = detail::bessel_k0_asymptotic(xr, P);
        testutil::check_close_rel(a, b, P - 1);
    }
}
