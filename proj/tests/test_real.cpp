#include "test_util.hpp"

#include "ginprod/complex.hpp"

using namespace ginprod;
using testutil::R;

TEST_CASE("precision is carried per value and never silently narrowed", "[real]") {
    Real a = R("1.25", 50);
    Real b = R("2.5", 90);
    CHECK(a.precision_digits() >= 50);
    CHECK(b.precision_digits() >= 90);

    Real s = a + b;
    CHECK(s.precision_digits() >= 90); // widened to the wider operand

    Real narrowed = s.to_digits(40); // narrowing must be explicit
    CHECK(narrowed.precision_digits() >= 40);
    CHECK(narrowed.precision_digits() < 50);
}

TEST_CASE("working precision is at least 30 digits", "[real]") {
    Real tiny(5);
    CHECK(tiny.precision_digits() >= 30);
    CHECK(Real::from_long(7, 1).precision_digits() >= 30);
}

TEST_CASE("per-operation relative error stays below 10^(1-P)", "[real]") {
    // x/y * y recovers x to the stated precision
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int i = 0; i < 50; ++i) {
        int P = 30 + static_cast<int>(i * 1.7);
        Real x = Real::from_double(dist(gen), P);
        Real y = Real::from_double(dist(gen), P);
        if (y.is_zero()) continue;
        Real back = (x / y) * y;
        Real err = abs(back - x);
        CHECK(err <= pow10(1 - P, P + 10) * abs(x));
    }
}

TEST_CASE("string round trip and exact binary scaling", "[real]") {
    Real x = R("0.123456789012345678901234567890123456789", 45);
    Real y = Real::from_string(x.str(40), 45);
    CHECK(abs(x - y) <= pow10(-38, 45));

    Real p = Real::pow2(-77, 40);
    CHECK(ldexp2(p, 77) == Real::from_long(1, 40));
    CHECK(ldexp2(R("3", 40), 2) == Real::from_long(12, 40));
}

TEST_CASE("constants", "[real]") {
    testutil::check_close_abs(Real::pi(60), R("3.14159265358979323846264338327950288419716939937510582097494", 60), 58);
    testutil::check_close_abs(Real::euler_gamma(60), R("0.577215664901532860606512090082402431042159335939923598805767", 60), 58);
}

TEST_CASE("complex arithmetic and principal log", "[real]") {
    int P = 50;
    Complex z(R("3", P), R("4", P));
    CHECK(abs(abs(z) - Real::from_long(5, P)) <= pow10(-48, P));

    Complex lz = log(z);
    Complex back = exp(lz);
    CHECK(abs(back - z) <= pow10(-45, P));

    // components share one precision
    Complex w(R("1", 30), R("2", 80));
    CHECK(w.real().precision_digits() == w.imag().precision_digits());

    Complex q = pow_long(z, 3);
    Complex q2 = z * z * z;
    CHECK(abs(q - q2) <= pow10(-45, P));
}
