// |T|^2 of a gain spike near z = 2ik. The peak grows like (2k/|2ik - z|)^2.

#include <cstdio>

#include "nsskit/scattering.hpp"

int main() {
    using namespace nsskit;
    const double a = 0.4, s = 4.0;
    ProblemConfig cfg;
    cfg.potential = PotentialSpec::delta({0.0, s}, a);

    std::printf("k,abs_T2,abs_Rl2,closed_form_T2\n");
    for (double k = 1.90; k <= 2.10 + 1e-12; k += 0.01) {
        try {
            auto amp = scatter(cfg, {k, 1.0, 1.0});
            const double exact = std::norm(2.0 * I * k / (2.0 * I * k - cfg.potential.strength));
            std::printf("%.2f,%.10g,%.10g,%.10g\n", k, std::norm(amp.t_left), std::norm(amp.r_left), exact);
        } catch (const DivergentAmplitude& e) {
            std::printf("%.2f,inf,inf,inf  # %s\n", k, e.what());
        }
    }
}
