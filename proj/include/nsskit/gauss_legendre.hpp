#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "model.hpp"

namespace nsskit {

struct QuadratureRule {
    std::vector<double> nodes;    // ascending, in (-1, 1)
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(std::size_t n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (std::size_t j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / static_cast<double>(j);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - t * t) * dp * dp);
        rule.nodes[i] = -t;
        rule.nodes[n - 1 - i] = t;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Barycentric Lagrange interpolation on a fixed node set.
class BarycentricInterpolant {
public:
    explicit BarycentricInterpolant(std::vector<double> nodes) : nodes_(std::move(nodes)), w_(nodes_.size(), 1.0) {
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            for (std::size_t m = 0; m < nodes_.size(); ++m)
                if (m != j) w_[j] /= (nodes_[j] - nodes_[m]);
    }

    /// Values of the Lagrange basis polynomials at t.
    std::vector<double> basis(double t) const {
        std::vector<double> out(nodes_.size(), 0.0);
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            if (t == nodes_[j]) {
                out[j] = 1.0;
                return out;
            }
        double denom = 0.0;
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            out[j] = w_[j] / (t - nodes_[j]);
            denom += out[j];
        }
        for (auto& v : out) v /= denom;
        return out;
    }

    const std::vector<double>& nodes() const { return nodes_; }

private:
    std::vector<double> nodes_;
    std::vector<double> w_;
};

/// Weights omega_m such that sum_m omega_m g(t_m) = integral_{-1}^{tau} p(t) dt,
/// p the interpolant of g on the rule's nodes. Exact for the interpolant.
inline std::vector<double> partial_integration_weights(const QuadratureRule& rule,
                                                       const BarycentricInterpolant& interp, double tau) {
    std::vector<double> out(rule.nodes.size(), 0.0);
    const double half = 0.5 * (tau + 1.0);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = -1.0 + half * (rule.nodes[q] + 1.0);
        auto l = interp.basis(t);
        for (std::size_t m = 0; m < out.size(); ++m) out[m] += half * rule.weights[q] * l[m];
    }
    return out;
}

}  // namespace nsskit
