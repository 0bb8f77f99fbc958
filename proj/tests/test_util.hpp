#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ginprod/real.hpp"
#include "json.hpp"

namespace testutil {

using ginprod::Real;

inline Real R(const char* s, int digits) { return Real::from_string(s, digits); }

/// |a - b| <= 10^-tol_digits (absolute).
inline void check_close_abs(const Real& a, const Real& b, int tol_digits) {
    Real diff = abs(a - b);
    Real tol = ginprod::pow10(-tol_digits, std::max(a.precision_digits(), 40));
    INFO("a = " << a.str(25) << "  b = " << b.str(25) << "  |diff| = " << diff.str(5)
                << "  tol = 1e-" << tol_digits);
    CHECK(diff <= tol);
}

/// |a - b| <= 10^-tol_digits * |b| (relative to b).
inline void check_close_rel(const Real& a, const Real& b, int tol_digits) {
    Real diff = abs(a - b);
    Real tol = ginprod::pow10(-tol_digits, std::max(a.precision_digits(), 40)) * abs(b);
    INFO("a = " << a.str(25) << "  b = " << b.str(25) << "  rel = " << (diff / abs(b)).str(5)
                << "  tol = 1e-" << tol_digits);
    CHECK(diff <= tol);
}

inline nlohmann::json load_reference_values() {
    std::ifstream in(std::string(GINPROD_DATA_DIR) + "/paper_values.json");
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace testutil
