#pragma once

#include <cmath>

#include "integrator.hpp"
#include "model.hpp"

namespace nsskit {

/// Left Jost solution psi_{k-}: N_- e^{-ikx} for x < 0, xi on [0,1], and
/// (e^{ik(x-1)} F_+ - e^{-ik(x-1)} F_-)/(2ik) for x > 1.
struct JostLeft {
    double k = 0.0;
    Complex n_minus;
    Complex xi_at_1, dxi_at_1;
    Complex f_plus, f_minus;

    /// psi_{k-}(x) outside [0,1], rebuilt from the stored boundary data.
    Complex tail(double x) const {
        if (x <= 0.0) return n_minus * std::exp(-I * k * x);
        if (x >= 1.0)
            return (std::exp(I * k * (x - 1.0)) * f_plus - std::exp(-I * k * (x - 1.0)) * f_minus) / (2.0 * I * k);
        throw ContractViolation("JostLeft::tail is only defined outside [0,1]");
    }
};

/// Right Jost solution psi_{k+}: (e^{ikx} G_+ - e^{-ikx} G_-)/(2ik) for x < 0,
/// zeta on [0,1], and N~_+ e^{ik(x-1)} for x > 1.
struct JostRight {
    double k = 0.0;
    Complex n_plus_tilde;
    Complex zeta_at_0, dzeta_at_0;
    Complex g_plus, g_minus;

    Complex tail(double x) const {
        if (x >= 1.0) return n_plus_tilde * std::exp(I * k * (x - 1.0));
        if (x <= 0.0) return (std::exp(I * k * x) * g_plus - std::exp(-I * k * x) * g_minus) / (2.0 * I * k);
        throw ContractViolation("JostRight::tail is only defined outside [0,1]");
    }
};

struct ScatteringAmplitudes {
    Complex r_left, t_left, r_right, t_right;
};

inline constexpr double divergence_threshold = 1e-12;

inline JostLeft jost_left(const ProblemConfig& config, double k, Complex n_minus) {
    if (!(k > 0.0)) throw ContractViolation("jost_left requires k > 0");
    if (n_minus == 0.0 || !is_finite(n_minus)) throw ContractViolation("jost_left requires finite N_- != 0");
    auto res = integrate(config, k, 0.0, 1.0, {0.0, n_minus, -I * k * n_minus});
    const auto& s = res.final;
    return {k, n_minus, s.psi, s.dpsi, s.dpsi + I * k * s.psi, s.dpsi - I * k * s.psi};
}

inline JostRight jost_right(const ProblemConfig& config, double k, Complex n_plus_tilde) {
    if (!(k > 0.0)) throw ContractViolation("jost_right requires k > 0");
    if (n_plus_tilde == 0.0 || !is_finite(n_plus_tilde))
        throw ContractViolation("jost_right requires finite N~_+ != 0");
    auto res = integrate(config, k, 1.0, 0.0, {1.0, n_plus_tilde, I * k * n_plus_tilde});
    const auto& s = res.final;
    return {k, n_plus_tilde, s.psi, s.dpsi, s.dpsi + I * k * s.psi, s.dpsi - I * k * s.psi};
}

/// Left/right reflection and transmission amplitudes. Throws
/// DivergentAmplitude when F_- or G_+ is below 1e-12 k |amplitude|, i.e. on a
/// (nonlinear) spectral singularity.
inline ScatteringAmplitudes rt_amplitudes(const JostLeft& left, const JostRight& right) {
    const double k = left.k;
    if (right.k != k) throw ContractViolation("rt_amplitudes: left and right Jost data at different k");
    if (std::abs(right.g_plus) < divergence_threshold * k * std::abs(right.n_plus_tilde))
        throw DivergentAmplitude("G+", std::abs(right.g_plus));
    if (std::abs(left.f_minus) < divergence_threshold * k * std::abs(left.n_minus))
        throw DivergentAmplitude("F-", std::abs(left.f_minus));
    const Complex eik = std::exp(-I * k);
    return {
        -right.g_minus / right.g_plus,
        2.0 * I * k * eik * right.n_plus_tilde / right.g_plus,
        -eik * eik * left.f_plus / left.f_minus,
        -2.0 * I * k * eik * left.n_minus / left.f_minus,
    };
}

inline ScatteringAmplitudes scatter(const ProblemConfig& config, const BoundaryData& data) {
    return rt_amplitudes(jost_left(config, data.k, data.n_minus), jost_right(config, data.k, data.n_plus_tilde));
}

}  // namespace nsskit
