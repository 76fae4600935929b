// Picard iterates against the adaptive integrator for a weak Kerr term.

#include <cstdio>

#include "nsskit/integrator.hpp"
#include "nsskit/picard.hpp"

int main() {
    using namespace nsskit;
    ProblemConfig cfg;
    cfg.potential = PotentialSpec::delta({0.1, 1.0}, 0.45);
    cfg.gamma = 5e-3;
    const double k = 3.0;
    const WaveState init{0.0, 1.0, -I * k};

    const auto rk = integrate(cfg, k, 0.0, 1.0, init);
    std::printf("rk      psi(1) = %.15f %+.15fi  (%ld steps)\n", rk.final.psi.real(), rk.final.psi.imag(),
                rk.steps_taken);
    for (int order = 1; order <= 4; ++order) {
        const auto pic = picard_propagate(cfg, k, 0.0, 1.0, init, order);
        std::printf("order %d psi(1) = %.15f %+.15fi  |diff| = %.2e\n", order, pic.psi.real(), pic.psi.imag(),
                    std::abs(pic.psi - rk.final.psi));
    }
}
