#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace nsskit {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr Complex I{0.0, 1.0};

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Potential confined to [0,1]: either nothing or a single complex delta spike
/// z*delta(x - a).
struct PotentialSpec {
    enum class Kind { Zero, Delta };

    Kind kind = Kind::Zero;
    Complex strength{};   // z = r + i s, units 1/length
    double position = 0.5;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec delta(Complex z, double a) { return {Kind::Delta, z, a}; }

    bool is_delta() const { return kind == Kind::Delta; }
    /// True when the spike sits strictly between lo and hi (in either order).
    bool spike_between(double lo, double hi) const {
        if (!is_delta()) return false;
        if (lo > hi) std::swap(lo, hi);
        return position > lo && position < hi;
    }
};

/// Homogeneous nonlinearity f(|psi|). The built-in variants carry their
/// parameters so they can be written back to a config file; Custom wraps an
/// arbitrary callable.
class NonlinearityProfile {
public:
    enum class Kind { Kerr, Power, Constant, Custom };

    static NonlinearityProfile kerr() { return NonlinearityProfile(Kind::Kerr, 2.0); }
    static NonlinearityProfile power(double p) { return NonlinearityProfile(Kind::Power, p); }
    static NonlinearityProfile constant(double c) { return NonlinearityProfile(Kind::Constant, c); }

    /// `sign` declares the sign of f on amp > 0 (+1, -1) or 0 when unknown or
    /// indefinite. It only drives gap annotation in sweeps.
    static NonlinearityProfile custom(std::function<double(double)> fn, std::string name = "custom", int sign = 0) {
        NonlinearityProfile p(Kind::Custom, 0.0);
        p.fn_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
        p.name_ = std::move(name);
        p.sign_ = sign;
        return p;
    }

    double operator()(double amp) const {
        switch (kind_) {
            case Kind::Kerr: return amp * amp;
            case Kind::Power: return std::pow(amp, param_);
            case Kind::Constant: return param_;
            case Kind::Custom: return (*fn_)(amp);
        }
        return 0.0;
    }

    Kind kind() const { return kind_; }
    /// Exponent for Power (2 for Kerr), value for Constant.
    double parameter() const { return param_; }

    /// Sign of f(amp) for amp > 0; 0 when zero, unknown or sign-indefinite.
    int sign() const {
        switch (kind_) {
            case Kind::Kerr:
            case Kind::Power: return 1;
            case Kind::Constant: return param_ > 0 ? 1 : (param_ < 0 ? -1 : 0);
            case Kind::Custom: return sign_;
        }
        return 0;
    }

    /// Whether f actually depends on the amplitude. Constant profiles do not,
    /// which makes the amplitude unknown of the singularity solver degenerate.
    bool amplitude_dependent() const { return kind_ != Kind::Constant; }

    std::string name() const {
        switch (kind_) {
            case Kind::Kerr: return "kerr";
            case Kind::Power: return "power";
            case Kind::Constant: return "constant";
            case Kind::Custom: return name_;
        }
        return {};
    }

private:
    NonlinearityProfile(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
    std::shared_ptr<const std::function<double(double)>> fn_;
    std::string name_;
    int sign_ = 0;
};

inline constexpr double default_ode_tol = 1e-10;
inline constexpr long default_max_steps = 1'000'000;
inline constexpr double min_step = 1e-14;

struct ProblemConfig {
    PotentialSpec potential;
    double gamma = 0.0;
    NonlinearityProfile profile = NonlinearityProfile::kerr();
    double ode_tol = default_ode_tol;
    long max_steps = default_max_steps;
};

/// (psi, psi') at position x.
struct WaveState {
    double x = 0.0;
    Complex psi{};
    Complex dpsi{};
};

/// Asymptotic data of the two Jost solutions at wavenumber k.
struct BoundaryData {
    double k = 1.0;
    Complex n_minus{1.0, 0.0};
    Complex n_plus_tilde{1.0, 0.0};
};

/// Returns human-readable invariant violations; empty when the config is valid.
inline std::vector<std::string> validate_config(const ProblemConfig& config) {
    std::vector<std::string> out;
    const auto& v = config.potential;
    if (v.is_delta()) {
        if (!is_finite(v.strength)) out.emplace_back("potential strength must be finite");
        if (!(v.position > 0.0 && v.position < 1.0)) out.emplace_back("a must lie strictly inside (0,1)");
    }
    if (!is_finite(config.gamma)) out.emplace_back("gamma must be finite");
    if (!(config.ode_tol > 0.0) || !is_finite(config.ode_tol)) out.emplace_back("ode_tol must be positive");
    if (config.max_steps <= 0) out.emplace_back("max_steps must be positive");
    switch (config.profile.kind()) {
        case NonlinearityProfile::Kind::Power:
            if (!(config.profile.parameter() > 0.0) || !is_finite(config.profile.parameter()))
                out.emplace_back("power exponent p must be positive");
            break;
        case NonlinearityProfile::Kind::Constant:
            if (!is_finite(config.profile.parameter())) out.emplace_back("constant c must be finite");
            break;
        default: break;
    }
    return out;
}

inline void require_valid(const ProblemConfig& config) {
    auto violations = validate_config(config);
    if (violations.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw ConfigError(msg);
}

/// Parity image x -> 1 - x: the spike moves from a to 1 - a.
inline ProblemConfig mirrored(ProblemConfig config) {
    if (config.potential.is_delta()) config.potential.position = 1.0 - config.potential.position;
    return config;
}

inline ProblemConfig with_potential(ProblemConfig config, PotentialSpec potential) {
    config.potential = potential;
    return config;
}

}  // namespace nsskit
