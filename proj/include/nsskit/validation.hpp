#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "integrator.hpp"
#include "nss_locator.hpp"
#include "perturbation.hpp"
#include "picard.hpp"

namespace nsskit::validation {

struct SuiteResult {
    std::string name;
    bool passed = true;
    int cases = 0;
    int failures = 0;
    double max_error = 0.0;   // worst observed value of the suite metric
    double bound = 0.0;
    std::string note;
};

struct Options {
    double ode_tol = default_ode_tol;
};

namespace detail {

inline void record(SuiteResult& r, double err, double bound) {
    ++r.cases;
    r.max_error = std::max(r.max_error, err);
    if (!(err <= bound)) {
        ++r.failures;
        r.passed = false;
    }
}

inline void record_failure(SuiteResult& r, const std::string& what) {
    ++r.cases;
    ++r.failures;
    r.passed = false;
    if (r.note.empty()) r.note = what;
}

inline SolveOptions tight_solve(const Options& opt) {
    SolveOptions so;
    so.tol = 1e-11;
    so.ode_tol = opt.ode_tol;
    return so;
}

}  // namespace detail

/// gamma = 0, z = 2ik: |F_-|/(k|N_-|) must vanish.
inline SuiteResult linear_lss(const Options& opt = {}) {
    SuiteResult r{"linear_lss"};
    r.bound = 1e-8;
    for (double a : {0.2, 1.0 / 3.0, 0.5, 0.7})
        for (double k : {1.0, pi / 2, 2.0, 5.0}) {
            ProblemConfig c;
            c.potential = PotentialSpec::delta(2.0 * I * k, a);
            c.ode_tol = opt.ode_tol;
            try {
                detail::record(r, std::abs(nss_residual(c, k, 1.0, Side::Left)) / k, r.bound);
            } catch (const Error& e) {
                detail::record_failure(r, e.what());
            }
        }
    return r;
}

/// Left singularities at a against right singularities at 1-a (exact image)
/// and against left singularities at 1-a (relative distance of (s, gamma f)).
inline SuiteResult parity(const Options& opt = {}) {
    SuiteResult r{"parity"};
    r.bound = 1e-6;
    const double rr = 1e-4;
    const auto kerr = NonlinearityProfile::kerr();
    for (double a : {1.0 / 3.0, 0.25})
        for (double kp : {0.3, 0.7, 1.2, 2.3, 3.6, 5.3, 8.1}) {
            const double k = kp * pi;
            const auto pert = perturbation::evaluate(k, a, rr);
            if (!pert.valid) continue;
            const double gamma = pert.gamma_f > 0 ? 1.0 : -1.0;
            const NssGuess seed{pert.s, std::sqrt(std::abs(pert.gamma_f))};
            auto so = detail::tight_solve(opt);
            try {
                auto left = solve_nss(a, rr, gamma, kerr, k, seed, so);
                auto mirror = solve_nss(1.0 - a, rr, gamma, kerr, k, seed, so);
                so.side = Side::Right;
                auto right = solve_nss(1.0 - a, rr, gamma, kerr, k, seed, so);
                detail::record(r, std::abs(right.s - left.s) / std::abs(left.s), r.bound);
                detail::record(r, std::abs(right.gamma_f - left.gamma_f) / std::abs(left.gamma_f), r.bound);
                detail::record(r,
                               std::hypot(mirror.s - left.s, mirror.gamma_f - left.gamma_f) /
                                   std::hypot(left.s, left.gamma_f),
                               r.bound);
            } catch (const Error& e) {
                detail::record_failure(r, e.what());
            }
        }
    return r;
}

/// Second Picard iterate against the adaptive integrator at x = 1 for weak
/// nonlinearity, |gamma f(|N|)| / k^2 <= 1e-3.
inline SuiteResult picard_vs_rk(const Options& opt = {}) {
    SuiteResult r{"picard_vs_rk"};
    r.bound = 1e-6;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double k = 0.5 + 9.5 * u(rng);
        const double a = 0.1 + 0.8 * u(rng);
        const Complex n = std::polar(0.5 + u(rng), 2 * pi * u(rng));
        ProblemConfig c;
        c.potential = PotentialSpec::delta({u(rng) - 0.5, 2.0 * k * u(rng)}, a);
        c.gamma = (u(rng) < 0.5 ? -1.0 : 1.0) * 1e-3 * k * k / std::norm(n) * u(rng);
        c.ode_tol = opt.ode_tol;
        const WaveState init{0.0, n, -I * k * n};
        try {
            const auto rk = integrate(c, k, 0.0, 1.0, init).final;
            const auto pic = picard_propagate(c, k, 0.0, 1.0, init, 2);
            detail::record(r, std::abs(pic.psi - rk.psi) / std::abs(rk.psi), r.bound);
        } catch (const Error& e) {
            detail::record_failure(r, e.what());
        }
    }
    return r;
}

/// Exact singularities at r = 1e-4 against the first-order locus, on samples
/// well inside the validity region (margin <= 5e-5, |gamma f| <= 1e-2; the
/// second-order error grows like (gamma f)^2). Metric: max(|ds|, |d gamma f|/k).
inline SuiteResult perturbative_consistency(const Options& opt = {}) {
    SuiteResult r{"perturbative_consistency"};
    r.bound = 1e-6;
    const double rr = 1e-4;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uk(0.05, 10 * pi), ua(0.05, 0.95);
    int taken = 0;
    while (taken < 12) {
        const double k = uk(rng), a = ua(rng);
        if (!(perturbation::validity(k, a, rr).margin <= 5e-5)) continue;
        const auto pert = perturbation::evaluate(k, a, rr);
        if (!(std::abs(pert.gamma_f) <= 1e-2)) continue;
        ++taken;
        const double gamma = pert.gamma_f > 0 ? 1.0 : -1.0;
        try {
            auto p = solve_nss(a, rr, gamma, NonlinearityProfile::kerr(), k,
                               {pert.s, std::sqrt(std::abs(pert.gamma_f))}, detail::tight_solve(opt));
            detail::record(r, std::max(std::abs(p.s - pert.s), std::abs(p.gamma_f - pert.gamma_f) / k), r.bound);
        } catch (const Error& e) {
            detail::record_failure(r, e.what());
        }
    }
    return r;
}

inline std::vector<std::string> suite_names() {
    return {"linear_lss", "parity", "picard_vs_rk", "perturbative_consistency"};
}

inline SuiteResult run_suite(const std::string& name, const Options& opt = {}) {
    if (name == "linear_lss") return linear_lss(opt);
    if (name == "parity") return parity(opt);
    if (name == "picard_vs_rk") return picard_vs_rk(opt);
    if (name == "perturbative_consistency") return perturbative_consistency(opt);
    throw ConfigError("unknown validation suite '" + name + "'");
}

}  // namespace nsskit::validation
