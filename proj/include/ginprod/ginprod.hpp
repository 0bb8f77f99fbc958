#pragma once

#include "ginprod/bessel.hpp"
#include "ginprod/complex.hpp"
#include "ginprod/contour.hpp"
#include "ginprod/equilibrium.hpp"
#include "ginprod/errors.hpp"
#include "ginprod/gamma.hpp"
#include "ginprod/linalg.hpp"
#include "ginprod/meijer.hpp"
#include "ginprod/montecarlo.hpp"
#include "ginprod/probability.hpp"
#include "ginprod/quadrature.hpp"
#include "ginprod/real.hpp"
#include "ginprod/rng.hpp"
#include "ginprod/weight.hpp"

namespace ginprod {
inline constexpr const char* kVersion = "0.1.0";
}
