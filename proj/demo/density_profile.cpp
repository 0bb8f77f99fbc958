// Print equilibrium-density profiles for a few factor counts; pipe the
// output into a plotter to see the semicircle flatten and the origin spike
// grow with m.
#include <cstdio>

#include "ginprod/ginprod.hpp"

using namespace ginprod;

int main() {
    std::printf("x");
    for (int m : {1, 2, 4}) std::printf(",rho_m%d", m);
    std::printf("\n");
    const int grid = 41;
    for (int i = 0; i < grid; ++i) {
        Real x = Real::from_long(2 * i + 1, 40) / grid - 1L;
        std::printf("%s", x.str(6).c_str());
        for (int m : {1, 2, 4}) {
            Real rho = equilibrium_density(m, x, 20);
            std::printf(",%s", rho.str(10).c_str());
        }
        std::printf("\n");
    }
    return 0;
}
