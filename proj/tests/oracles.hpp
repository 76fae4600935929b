#pragma once

// Test-only reference computations, written independently of the library's
// numerical paths.

#include <cmath>
#include <complex>
#include <utility>

namespace oracle {

using C = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr C i{0.0, 1.0};

// Left Jost data of the linear problem with z delta(x-a) by closed-form plane
// waves: N e^{-ikx} up to a, then free propagation of the jumped state.
struct LinearLeft {
    C xi1, dxi1, f_plus, f_minus;
};

inline LinearLeft linear_delta_left(double k, C z, double a, C n) {
    const C psi_a = n * std::exp(-i * k * a);
    const C dpsi_a = -i * k * psi_a + z * psi_a;
    const double d = 1.0 - a;
    const C xi1 = psi_a * std::cos(k * d) + dpsi_a * std::sin(k * d) / k;
    const C dxi1 = -psi_a * k * std::sin(k * d) + dpsi_a * std::cos(k * d);
    return {xi1, dxi1, dxi1 + i * k * xi1, dxi1 - i * k * xi1};
}

// Scattering amplitudes of z delta(x-a) by matching plane waves on both sides
// of the spike and solving the 2x2 continuity/jump system with Cramer's rule.
struct LinearAmplitudes {
    C r_left, t_left, r_right, t_right;
};

inline LinearAmplitudes linear_delta_amplitudes(double k, C z, double a) {
    // Left incidence: e^{ikx} + R e^{-ikx} (x<a), T e^{ikx} (x>a).
    // Unknowns (R, T):  R e^{-ika} - T e^{ika} = -e^{ika}
    //                   ik R e^{-ika} + (ik + z) T e^{ika} - ik T e^{ika} ... written out below.
    const C ep = std::exp(i * k * a), em = std::exp(-i * k * a);
    auto solve = [](C a11, C a12, C b1, C a21, C a22, C b2) {
        const C det = a11 * a22 - a12 * a21;
        return std::pair<C, C>{(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
    };
    // continuity: em R - ep T = -ep
    // jump: ik ep T - (ik ep - ik em R) = z T ep  ->  ik em R + (ik - z) ep T = ik ep
    auto [rl, tl] = solve(em, -ep, -ep, i * k * em, (i * k - z) * ep, i * k * ep);
    // Right incidence: e^{-ikx} + R e^{ikx} (x>a), T e^{-ikx} (x<a).
    // continuity: ep R - em T = -em
    // jump: (-ik em + ik ep R) - (-ik em T) = z T em  ->  ik ep R + (ik - z) em T = ik em
    auto [rr, tr] = solve(ep, -em, -em, i * k * ep, (i * k - z) * em, i * k * em);
    return {rl, tl, rr, tr};
}

// Root of tan k = k on (pi, 3pi/2) by bisection.
inline double tan_k_equals_k() {
    double lo = pi + 1e-9, hi = 1.5 * pi - 1e-9;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::tan(mid) - mid < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Brute-force minimum of k|r|/|sin k cos(k(1-2a))| on (k_lo, k_hi) with a fine
// uniform scan.
inline std::pair<double, double> threshold_scan(double a, double r, double k_lo, double k_hi, double step) {
    double best = INFINITY, kb = k_lo;
    for (double k = k_lo + step; k < k_hi; k += step) {
        const double d = std::abs(std::sin(k) * std::cos(k * (1.0 - 2.0 * a)));
        if (d == 0.0) continue;
        const double v = k * std::abs(r) / d;
        if (v < best) {
            best = v;
            kb = k;
        }
    }
    return {best, kb};
}

// integral_0^x sin(x-y) e^{-iy} dy = (sin x - x e^{-ix}) / (2i)
inline C first_order_plane_wave_integral(double x) { return (std::sin(x) - x * std::exp(-i * x)) / (2.0 * i); }

}  // namespace oracle
