#include "test_util.hpp"

#include "ginprod/meijer.hpp"

using namespace ginprod;
using testutil::R;

namespace {

Real pi_rational(long long p, int t, int q, int digits) {
    Real v = Real::from_long(p, digits) * pow_long(Real::pi(digits), t);
    return ldexp2(v, -q);
}

} // namespace

TEST_CASE("nu entries are Gamma powers", "[meijer]") {
    int P = 45;
    for (int m : {1, 2, 3})
        testutil::check_close_rel(nu_entry(m, 1, P),
                                  pow(Real::pi(P + 5), Real::from_double(0.5 * m, P + 5)), P - 2);
    testutil::check_close_rel(nu_entry(2, 2, P), ldexp2(Real::pi(P + 5), -2), P - 2);
    // Gamma(5/2) = 3 sqrt(pi) / 4
    testutil::check_close_rel(nu_entry(1, 3, P),
                              ldexp2(Real::from_long(3, P + 5) * sqrt(Real::pi(P + 5)), -2), P - 2);
}

TEST_CASE("the nine m = 2 entries hit their two-power pi^2 rationals", "[meijer]") {
    auto data = testutil::load_reference_values();
    int P = 40;
    for (const auto& row : data["m2_entry_matrix_n6"]["rows"]) {
        int j = row["j"], k = row["k"];
        auto e = alpha_entry(2, j, k, P);
        Real expect = pi_rational(row["p"].get<long long>(), 2, row["two_power"].get<int>(), P + 10);
        INFO("entry (" << j << "," << k << ")");
        testutil::check_close_rel(e.value, expect, 25);
        CHECK(e.error_estimate < pow10(-25, P) * expect);
    }
}

TEST_CASE("m = 1 entries assemble the known closed forms", "[meijer]") {
    int P = 40;
    // g(1,1,1) = sqrt(pi/2); g(1,2,1) = sqrt(pi)/2^{5/2}; both follow from
    // the moment entries 1/sqrt(pi) and 1/(2 sqrt(pi)) through the
    // 2^{(j+k-1/2)m} (2 pi)^{-m} rescaling
    Real expect11 = sqrt(ldexp2(Real::pi(P + 5), -1));
    testutil::check_close_rel(alpha_entry(1, 1, 1, P).value, expect11, P - 6);
    Real expect21 = sqrt(Real::pi(P + 5)) / pow(Real::from_long(2, P + 5), R("2.5", P + 5));
    testutil::check_close_rel(alpha_entry(1, 2, 1, P).value, expect21, P - 6);
}

TEST_CASE("Mellin-Barnes and direct quadrature agree through the moment rescaling", "[meijer]") {
    // alpha_{2j-1,2k} = 2^{(j+k-1/2)m} (2 pi)^{-m} g(m,j,k), both sides
    // computed by unrelated routes, agreement to 1e-10
    for (int m : {1, 2}) {
        Real twopi_m = pow_long(ldexp2(Real::pi(40), 1), m);
        for (int j = 1; j <= 3; ++j) {
            for (int k = 1; k <= 3; ++k) {
                auto g = alpha_entry(m, j, k, 30);
                Real pref = pow(Real::from_long(2, 40), Real::from_double(m * (j + k - 0.5), 40)) /
                            twopi_m;
                Real lhs = g.value * pref;
                Real rhs = alpha_oracle_quadrature(m, j, k, 14);
                INFO("m=" << m << " j=" << j << " k=" << k << " lhs=" << lhs.str(14)
                          << " rhs=" << rhs.str(14));
                CHECK(abs(lhs - rhs) <= pow10(-10, 40));
            }
        }
    }
}

TEST_CASE("oracle spot values", "[meijer]") {
    testutil::check_close_abs(alpha_oracle_quadrature(1, 1, 1, 14),
                              1L / sqrt(Real::pi(40)), 12);
    testutil::check_close_abs(alpha_oracle_quadrature(2, 1, 1, 14), R("0.5", 40), 12);
}

TEST_CASE("checkerboard entries vanish under honest quadrature", "[meijer]") {
    // both indices odd, or both even: the sgn moment cancels
    CHECK(abs(alpha_full_quadrature(2, 1, 3, 12)) <= pow10(-10, 40));
    CHECK(abs(alpha_full_quadrature(2, 2, 4, 12)) <= pow10(-10, 40));
    CHECK(abs(alpha_full_quadrature(1, 1, 3, 12)) <= pow10(-10, 40));
}

TEST_CASE("index swap flips the sign", "[meijer]") {
    Real a12 = alpha_full_quadrature(1, 1, 2, 12);
    Real a21 = alpha_full_quadrature(1, 2, 1, 12);
    testutil::check_close_abs(a12, -a21, 10);
    testutil::check_close_abs(a12, 1L / sqrt(Real::pi(40)), 10);
}

TEST_CASE("contour placement is free within the admissible interval", "[meijer]") {
    int P = 30;
    // j = 2: admissible (-1, 0), middle half (-0.75, -0.25)
    Real v1 = alpha_entry(2, 2, 1, P, -0.30).value;
    Real v2 = alpha_entry(2, 2, 1, P, -0.50).value;
    Real v3 = alpha_entry(2, 2, 1, P, -0.70).value;
    testutil::check_close_rel(v1, v2, P - 4);
    testutil::check_close_rel(v3, v2, P - 4);
    // j = 1: admissible (-1/2, 0), middle half (-0.375, -0.125)
    Real w1 = alpha_entry(2, 1, 1, P, -0.15).value;
    Real w2 = alpha_entry(2, 1, 1, P, -0.35).value;
    testutil::check_close_rel(w1, w2, P - 4);
}

TEST_CASE("argument validation", "[meijer]") {
    CHECK_THROWS_AS(alpha_entry(0, 1, 1, 30), domain_error);
    CHECK_THROWS_AS(alpha_entry(2, 1, 1, 30, -0.9), domain_error); // outside (-1/2, 0)
    CHECK_THROWS_AS(alpha_oracle_quadrature(3, 1, 1, 12), domain_error);
    CHECK_THROWS_AS(nu_entry(2, 0), domain_error);
}

TEST_CASE("rank-one route to p_{2,2}", "[meijer]") {
    int P = 40;
    auto r1 = alpha12_product_formula(1, 0, 0, P);
    CHECK(r1.exact);
    testutil::check_close_rel(r1.value, 1L / sqrt(Real::from_long(2, P + 5)), P - 3);

    auto r2 = alpha12_product_formula(2, 0, 0, P);
    CHECK(r2.exact);
    testutil::check_close_rel(r2.value, ldexp2(Real::pi(P + 5), -2), P - 4);

    auto r5 = alpha12_product_formula(5, 1000000, 20240809, P);
    CHECK_FALSE(r5.exact);
    Real table = R("0.8982590645", P);
    Real dev = abs(r5.value - table);
    INFO("mc value " << r5.value.str(12) << " se " << r5.std_error.str(4));
    CHECK(dev <= Real::from_long(3, P) * r5.std_error);

    CHECK_THROWS_AS(alpha12_product_formula(4, 100, 1, P), domain_error);
}
