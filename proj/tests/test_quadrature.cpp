#include "test_util.hpp"

#include "ginprod/quadrature.hpp"

using namespace ginprod;
using testutil::R;

TEST_CASE("tanh-sinh handles endpoint singularities", "[quadrature]") {
    int P = 35;
    auto f1 = [&](const Real& x) { return 1L / sqrt(x); };
    Real one = Real::from_long(1, P + 10);
    testutil::check_close_abs(tanh_sinh(f1, Real(P + 10), one, P).value,
                              Real::from_long(2, P), P - 3);

    auto f2 = [&](const Real& x) { return -log(x); };
    testutil::check_close_abs(tanh_sinh(f2, Real(P + 10), one, P).value,
                              Real::from_long(1, P), P - 3);
}

TEST_CASE("tanh-sinh on smooth integrands", "[quadrature]") {
    int P = 40;
    auto f = [&](const Real& x) { return x * x * x - x + Real::from_long(2, P + 10); };
    Real lo = Real::from_long(-1, P + 10), hi = Real::from_long(2, P + 10);
    // \int_{-1}^{2} (x^3 - x + 2) dx = 33/4
    testutil::check_close_abs(tanh_sinh(f, lo, hi, P).value,
                              Real::from_long(33, P) / 4L, P - 3);
}

TEST_CASE("exp-sinh on decaying tails", "[quadrature]") {
    int P = 35;
    auto f1 = [&](const Real& x) { return exp(-x); };
    testutil::check_close_abs(exp_sinh(f1, Real(P + 10), P).value, Real::from_long(1, P), P - 3);

    auto f2 = [&](const Real& x) { return exp(-x * x); };
    testutil::check_close_abs(exp_sinh(f2, Real(P + 10), P).value,
                              ldexp2(sqrt(Real::pi(P + 10)), -1), P - 3);

    // shifted lower endpoint
    auto f3 = [&](const Real& x) { return exp(-x); };
    Real three = Real::from_long(3, P + 10);
    testutil::check_close_rel(exp_sinh(f3, three, P).value, exp(-three), P - 3);
}

TEST_CASE("refinement cap raises convergence_error", "[quadrature]") {
    auto f = [&](const Real& x) { return 1L / sqrt(x); };
    Real one = Real::from_long(1, 60);
    CHECK_THROWS_AS(tanh_sinh(f, Real(60), one, 50, /*max_level=*/2), convergence_error);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly", "[quadrature]") {
    int P = 40;
    // degree 15 with n = 8 nodes: exact up to rounding
    auto f = [&](const Real& x) {
        Real x2 = x * x;
        Real x4 = x2 * x2;
        return x4 * x4 * x4 * x2 * x + x2 - Real::from_long(3, P + 5) * x;
    };
    Real lo = Real::from_long(-1, P + 5), hi = Real::from_long(1, P + 5);
    // \int_{-1}^{1} (x^15 + x^2 - 3x) dx = 2/3
    testutil::check_close_abs(gauss_legendre(f, lo, hi, 8, P),
                              Real::from_long(2, P) / 3L, P - 4);

    const auto& rule = gauss_legendre_rule(8, P);
    REQUIRE(rule.nodes.size() == 8);
    // nodes are symmetric, weights positive and sum to 2
    Real wsum(P);
    for (auto& w : rule.weights) {
        CHECK(w.sign() > 0);
        wsum += w;
    }
    testutil::check_close_abs(wsum, Real::from_long(2, P), P - 4);
    testutil::check_close_abs(rule.nodes[0], -rule.nodes[7], P - 4);
}
