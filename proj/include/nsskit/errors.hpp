#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace nsskit {

namespace detail {
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
}  // namespace detail

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Violated precondition of a public operation (bad k, x outside [0,1], ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// The integrator ran out of steps. Usually a blown-up focusing solution.
class StepLimitExceeded : public Error {
public:
    StepLimitExceeded(long steps, double x)
        : Error("step limit exceeded after " + std::to_string(steps) + " steps at x=" + detail::num(x)),
          steps(steps), x(x) {}
    long steps;
    double x;
};

/// Step size fell below the minimum step.
class ToleranceFailure : public Error {
public:
    ToleranceFailure(double h, double x)
        : Error("step size underflow (h=" + detail::num(h) + ") at x=" + detail::num(x)), h(h), x(x) {}
    double h;
    double x;
};

/// Picard iterates diverged.
class NonConvergent : public Error {
public:
    NonConvergent(int order, double increment)
        : Error("Picard iteration diverges at order " + std::to_string(order)), order(order), increment(increment) {}
    int order;
    double increment;
};

/// A reflection/transmission denominator vanished: the configuration sits on a
/// (nonlinear) spectral singularity.
class DivergentAmplitude : public Error {
public:
    DivergentAmplitude(const std::string& which, double magnitude)
        : Error("divergent amplitude: |" + which + "| = " + detail::num(magnitude)),
          which(which), magnitude(magnitude) {}
    std::string which;
    double magnitude;
};

/// Newton iteration for the singularity condition did not converge.
class NoConvergence : public Error {
public:
    NoConvergence(int iters, double last_residual)
        : Error("no convergence after " + std::to_string(iters) + " iterations, residual " +
                detail::num(last_residual)),
          iters(iters), last_residual(last_residual) {}
    int iters;
    double last_residual;
};

/// Newton was trapped against the amp > 0 boundary.
class NegativeAmplitude : public Error {
public:
    NegativeAmplitude(int iters, double amplitude)
        : Error("Newton iterate trapped at non-positive amplitude after " + std::to_string(iters) +
                " iterations"),
          iters(iters), amplitude(amplitude) {}
    int iters;
    double amplitude;
};

/// First-order formulas evaluated too close to an asymptote.
class AsymptoteProximity : public Error {
public:
    AsymptoteProximity(double k, double denominator)
        : Error("k=" + detail::num(k) + " is within the asymptote cutoff (|sin k cos k(1-2a)| = " +
                detail::num(denominator) + ")"),
          k(k), denominator(denominator) {}
    double k;
    double denominator;
};

}  // namespace nsskit
