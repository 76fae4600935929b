#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "csv.hpp"
#include "model.hpp"

namespace nsskit {

struct IvpResult {
    WaveState final;
    long steps_taken = 0;
    long steps_rejected = 0;
    /// Largest accepted local error estimate, in units where the tolerance is
    /// ode_tol. Never exceeds ode_tol on success.
    double est_error = 0.0;
    /// Sum of absolute local error estimates over all accepted steps. A rough
    /// a-posteriori bound on the global error of psi and psi'/max(k,1).
    double global_error = 0.0;
    std::optional<std::vector<WaveState>> trajectory;
};

/// Right-hand side of psi'' = (gamma f(|psi|) - k^2) psi on a spike-free
/// stretch of [0,1]. Returns (psi', psi'').
inline std::pair<Complex, Complex> rhs(const ProblemConfig& config, double k, const WaveState& state) {
    if (config.potential.is_delta() && state.x == config.potential.position)
        throw ContractViolation("rhs evaluated on the delta spike; use apply_delta_jump");
    const double coupling = config.gamma == 0.0 ? 0.0 : config.gamma * config.profile(std::abs(state.psi));
    return {state.dpsi, (coupling - k * k) * state.psi};
}

enum class Direction { LeftToRight, RightToLeft };

/// Derivative jump across z*delta(x-a): psi'(a+) = psi'(a-) + z psi(a).
inline WaveState apply_delta_jump(Complex z, WaveState state_at_a, Direction dir) {
    if (dir == Direction::LeftToRight)
        state_at_a.dpsi += z * state_at_a.psi;
    else
        state_at_a.dpsi -= z * state_at_a.psi;
    return state_at_a;
}

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // b - b_hat
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

struct State2 {
    Complex psi, dpsi;
};

inline State2 operator+(State2 a, State2 b) { return {a.psi + b.psi, a.dpsi + b.dpsi}; }
inline State2 operator*(double s, State2 a) { return {s * a.psi, s * a.dpsi}; }

class SegmentIntegrator {
public:
    SegmentIntegrator(const ProblemConfig& config, double k)
        : config_(config), k_(k), kappa_(std::max(std::abs(k), 1.0)) {}

    // Integrates across a spike-free segment, updating `res`.
    void run(WaveState& state, double to_x, IvpResult& res, long& budget, double& h_hint) const {
        const double span = to_x - state.x;
        if (span == 0.0) return;
        const double dir = span > 0 ? 1.0 : -1.0;
        const double tol = config_.ode_tol;
        double h = h_hint > 0 ? std::min(h_hint, std::abs(span)) : std::min(std::abs(span), 1e-2 / kappa_);
        double err_prev = 1e-4;
        State2 y{state.psi, state.dpsi};
        State2 k1 = deriv(y);
        double x = state.x;

        while (true) {
            const double remaining = std::abs(to_x - x);
            if (remaining <= 0.0) break;
            bool last = false;
            if (h >= remaining || remaining - h < 1e-12 * std::max(1.0, std::abs(to_x))) {
                h = remaining;
                last = true;
            }
            if (budget <= 0) throw StepLimitExceeded(res.steps_taken + res.steps_rejected, x);
            --budget;

            const double hs = dir * h;
            using T = Dopri5;
            State2 k2 = deriv(y + (hs * T::a21) * k1);
            State2 k3 = deriv(y + hs * (T::a31 * k1 + T::a32 * k2));
            State2 k4 = deriv(y + hs * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3));
            State2 k5 = deriv(y + hs * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4));
            State2 k6 = deriv(y + hs * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5));
            State2 ynew = y + hs * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
            State2 k7 = deriv(ynew);
            State2 err = hs * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);

            const double err_abs = std::max(std::abs(err.psi), std::abs(err.dpsi) / kappa_);
            const double scale = std::max({std::abs(y.psi), std::abs(y.dpsi) / kappa_, std::abs(ynew.psi),
                                           std::abs(ynew.dpsi) / kappa_, 1e-300});
            double err_norm = err_abs / (tol * scale);
            if (!is_finite(ynew.psi) || !is_finite(ynew.dpsi) || !std::isfinite(err_norm))
                err_norm = 1e10;

            if (err_norm <= 1.0) {
                x = last ? to_x : x + hs;
                y = ynew;
                k1 = k7;
                ++res.steps_taken;
                res.est_error = std::max(res.est_error, err_norm * tol);
                res.global_error += err_abs;
                if (res.trajectory) res.trajectory->push_back({x, y.psi, y.dpsi});
                if (last) break;
                // PI step-size control.
                double fac = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
                h *= std::clamp(fac, 0.2, 5.0);
                err_prev = std::max(err_norm, 1e-4);
            } else {
                ++res.steps_rejected;
                h *= std::max(0.2, 0.9 * std::pow(err_norm, -1.0 / 5));
            }
            if (h < min_step) throw ToleranceFailure(h, x);
        }
        h_hint = h;
        state = {to_x, y.psi, y.dpsi};
    }

private:
    State2 deriv(const State2& y) const {
        const double coupling = config_.gamma == 0.0 ? 0.0 : config_.gamma * config_.profile(std::abs(y.psi));
        return {y.dpsi, (coupling - k_ * k_) * y.psi};
    }

    const ProblemConfig& config_;
    double k_;
    double kappa_;
};

}  // namespace detail

/// Solves the confined nonlinear Schroedinger equation as an initial-value
/// problem from `from_x` to `to_x` (either direction) with an adaptive
/// Dormand-Prince 5(4) pair. A delta spike strictly between the endpoints is
/// crossed exactly through the derivative jump condition; a spike sitting on an
/// endpoint is not applied (the state there is taken as the one-sided limit on
/// the integration side).
///
/// The trajectory, when requested, holds the initial state and one entry per
/// accepted step; at a spike both the pre- and post-jump states are recorded.
inline IvpResult integrate(const ProblemConfig& config, double k, double from_x, double to_x,
                           const WaveState& initial, bool want_trajectory = false) {
    require_valid(config);
    if (!(from_x >= 0.0 && from_x <= 1.0 && to_x >= 0.0 && to_x <= 1.0))
        throw ContractViolation("integration endpoints must lie in [0,1]");
    if (initial.x != from_x) throw ContractViolation("initial.x must equal from_x");
    if (!is_finite(initial.psi) || !is_finite(initial.dpsi) || !std::isfinite(k))
        throw ContractViolation("non-finite initial data");

    IvpResult res;
    if (want_trajectory) res.trajectory.emplace(1, initial);
    detail::SegmentIntegrator seg(config, k);
    long budget = config.max_steps;
    double h_hint = -1.0;
    WaveState state = initial;

    const auto& v = config.potential;
    if (v.spike_between(from_x, to_x)) {
        seg.run(state, v.position, res, budget, h_hint);
        state = apply_delta_jump(v.strength, state, to_x > from_x ? Direction::LeftToRight : Direction::RightToLeft);
        if (res.trajectory) res.trajectory->push_back(state);
    }
    seg.run(state, to_x, res, budget, h_hint);
    state.x = to_x;
    res.final = state;
    return res;
}

/// CSV trajectory dump: header `x,re_psi,im_psi,re_dpsi,im_dpsi`.
inline void write_trajectory_csv(std::ostream& os, const std::vector<WaveState>& trajectory) {
    os << "x,re_psi,im_psi,re_dpsi,im_dpsi\n";
    csv::RowWriter row(os);
    for (const auto& s : trajectory) {
        row << s.x << s.psi.real() << s.psi.imag() << s.dpsi.real() << s.dpsi.imag();
        row.end();
    }
}

/// Probability current Im(conj(psi) psi').
inline double probability_current(const WaveState& s) { return std::imag(std::conj(s.psi) * s.dpsi); }

}  // namespace nsskit
