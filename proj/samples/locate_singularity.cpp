// One nonlinear spectral singularity from the first-order seed, then a short
// k sweep on both signs of gamma.

#include <cstdio>

#include "nsskit/nss_locator.hpp"

int main() {
    using namespace nsskit;
    const double a = 1.0 / 3.0, r = 1e-4, k = 2.5 * pi;
    const auto kerr = NonlinearityProfile::kerr();

    const auto seed = perturbation::evaluate(k, a, r);
    std::printf("first order: gamma f = %.10g  s = %.12g  valid = %d\n", seed.gamma_f, seed.s, seed.valid);

    const double gamma = seed.gamma_f > 0 ? 1.0 : -1.0;
    const auto p = solve_nss(a, r, gamma, kerr, k, {seed.s, std::sqrt(std::abs(seed.gamma_f))});
    std::printf("exact:       gamma f = %.10g  s = %.12g  |N| = %.6g  residual = %.2e  (%d Newton steps)\n",
                p.gamma_f, p.s, p.amplitude, p.residual, p.newton_iters);

    SweepOptions opt;
    opt.confirm_gaps = false;
    const auto grid = k_grid_over_pi(2.9, 3.1, 0.01);
    for (double g : {1.0, -1.0}) {
        const auto res = sweep_k(a, r, g, kerr, grid, opt);
        std::printf("gamma = %+g:", g);
        for (const auto& e : res.entries) std::printf(" %c", to_string(e.status)[0]);
        std::printf("\n");
    }
    std::printf("(c converged, g gap or guard band, f failed)\n");
}
