// Minimal library walkthrough: evaluate p_{N,N} for a product of Gaussian
// matrices three ways and print what agrees with what.
#include <cstdio>

#include "ginprod/ginprod.hpp"

using namespace ginprod;

int main() {
    EnsembleSpec spec{4, 2};
    auto exact = p_all_real_exact(spec, 60);
    std::printf("p(%d, %d) = %s\n", spec.N, spec.m, exact.value.str(30).c_str());
    if (exact.recognized_form)
        std::printf("  recognized closed form: %s\n", exact.recognized_form->str().c_str());

    MCConfig cfg;
    cfg.spec = spec;
    cfg.trials = 200000;
    cfg.seed = 7;
    cfg.workers = 4;
    auto mc = estimate_p(cfg);
    std::printf("  monte carlo: %.6f +- %.6f (%ld trials)\n", mc.p_hat[spec.N],
                mc.std_err[spec.N], mc.trials);

    Real asym = log_p_asymptotic(spec, 40);
    std::printf("  asymptotic log p ~ %s vs exact log p = %s\n", asym.str(8).c_str(),
                exact.log_value.str(8).c_str());
    return 0;
}
