#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "model.hpp"

// First-order (in gamma) description of the singularities of the complex delta
// potential z delta(x - a) with a homogeneous confined nonlinearity.
namespace nsskit::perturbation {

inline constexpr double asymptote_cutoff = 1e-6;
inline constexpr double smallness_factor = 1e-2;

namespace detail {
// e^{i theta} - 1 without cancellation for small theta.
inline Complex expm1_i(double theta) {
    const double s = std::sin(0.5 * theta);
    return {-2.0 * s * s, std::sin(theta)};
}
}  // namespace detail

/// A = e^{2ik(1-a)} + e^{2ika} - 2
inline Complex coeff_A(double k, double a) {
    return detail::expm1_i(2.0 * k * (1.0 - a)) + detail::expm1_i(2.0 * k * a);
}

/// B = e^{2ik(1-a)} - e^{2ika} + 2ik(2a-1)
inline Complex coeff_B(double k, double a) {
    return detail::expm1_i(2.0 * k * (1.0 - a)) - detail::expm1_i(2.0 * k * a) + 2.0 * I * k * (2.0 * a - 1.0);
}

/// Singular strength z = 2ik(1 + gamma f_- A / 4k^2) at first order.
inline Complex z_first_order(double k, double a, double gamma_f) {
    return 2.0 * I * k * (1.0 + gamma_f * coeff_A(k, a) / (4.0 * k * k));
}

/// xi_k(1) on the singular configuration, e^{ik(1-2a)} N_- (1 + gamma f_- B / 4k^2).
inline Complex xi1_first_order(double k, double a, double gamma_f, Complex n_minus) {
    return std::exp(I * k * (1.0 - 2.0 * a)) * n_minus * (1.0 + gamma_f * coeff_B(k, a) / (4.0 * k * k));
}

/// sin k cos(k(1-2a)); its zeros are the asymptotes.
inline double denominator(double k, double a) { return std::sin(k) * std::cos(k * (1.0 - 2.0 * a)); }

/// gamma f_- = -k r / (sin k cos(k(1-2a))).
inline double gamma_f_of_k(double k, double a, double r) {
    const double d = denominator(k, a);
    if (std::abs(d) < asymptote_cutoff) throw AsymptoteProximity(k, std::abs(d));
    return -k * r / d;
}

/// s = 2k - r (cos k cos(k(1-2a)) - 1) / (sin k cos(k(1-2a))).
inline double s_of_k(double k, double a, double r) {
    const double d = denominator(k, a);
    if (std::abs(d) < asymptote_cutoff) throw AsymptoteProximity(k, std::abs(d));
    const double c = std::cos(k * (1.0 - 2.0 * a));
    return 2.0 * k - r * (std::cos(k) * c - 1.0) / d;
}

struct Validity {
    bool valid = false;
    double margin = 0.0;   // |r| / (k |sin k cos(k(1-2a))|); valid iff <= 1e-2
};

inline Validity validity(double k, double a, double r) {
    const double scale = k * std::abs(denominator(k, a));
    const double margin = scale > 0.0 ? std::abs(r) / scale : std::numeric_limits<double>::infinity();
    return {r == 0.0 || margin <= smallness_factor, r == 0.0 ? 0.0 : margin};
}

struct PerturbativeNss {
    enum class Violation { None, TooCloseToAsymptote, RNotSmall };

    double k = 0.0, a = 0.0, r = 0.0;
    double gamma_f = std::numeric_limits<double>::quiet_NaN();
    double s = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
    Violation violation = Violation::None;
};

inline const char* to_string(PerturbativeNss::Violation v) {
    switch (v) {
        case PerturbativeNss::Violation::None: return "none";
        case PerturbativeNss::Violation::TooCloseToAsymptote: return "too_close_to_asymptote";
        case PerturbativeNss::Violation::RNotSmall: return "r_not_small";
    }
    return "";
}

inline PerturbativeNss evaluate(double k, double a, double r) {
    if (!(k > 0.0)) throw ContractViolation("perturbative formulas require k > 0");
    PerturbativeNss p{k, a, r};
    if (std::abs(denominator(k, a)) < asymptote_cutoff) {
        p.violation = PerturbativeNss::Violation::TooCloseToAsymptote;
        return p;
    }
    p.gamma_f = gamma_f_of_k(k, a, r);
    p.s = s_of_k(k, a, r);
    p.valid = validity(k, a, r).valid;
    if (!p.valid) p.violation = PerturbativeNss::Violation::RNotSmall;
    return p;
}

/// Zeros of sin k cos(k(1-2a)) in (0, k_max]: pi m for every a, plus
/// pi(m+1/2)/|1-2a| when a != 1/2. Coincident members of the two families are
/// merged (the pi m value is kept).
inline std::vector<double> asymptotes(double a, double k_max) {
    if (!(a > 0.0 && a < 1.0)) throw ContractViolation("asymptotes requires a in (0,1)");
    std::vector<double> out;
    const double limit = k_max * (1.0 + 1e-12);
    for (int m = 1; pi * m <= limit; ++m) out.push_back(pi * m);
    const double w = std::abs(1.0 - 2.0 * a);
    if (w > 0.0) {
        for (int m = 0;; ++m) {
            const double k = pi * (m + 0.5) / w;
            if (k > limit) break;
            const bool dup = std::any_of(out.begin(), out.end(),
                                         [&](double q) { return std::abs(q - k) <= 1e-12 * std::max(1.0, k); });
            if (!dup) out.push_back(k);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nsskit::perturbation
