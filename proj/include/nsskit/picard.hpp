#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "gauss_legendre.hpp"
#include "integrator.hpp"
#include "model.hpp"

namespace nsskit {

struct PicardOptions {
    int nodes_per_panel = 32;
    int panels_per_unit = 16;
    double lo = 0.0;   // solved segment, must contain initial.x and no spike
    double hi = 1.0;
};

namespace detail {

// Reference-panel data shared by every panel of a solve.
struct PanelBasis {
    QuadratureRule rule;
    BarycentricInterpolant interp;
    std::vector<std::vector<double>> cumulative;   // [i][m]: integral from -1 to t_i of l_m

    explicit PanelBasis(int n) : rule(gauss_legendre(static_cast<std::size_t>(n))), interp(rule.nodes) {
        cumulative.reserve(rule.nodes.size());
        for (double t : rule.nodes) cumulative.push_back(partial_integration_weights(rule, interp, t));
    }
};

// Panels laid outward from x0; `step` is signed.
struct PanelRun {
    double x0 = 0.0;
    double step = 0.0;
    int count = 0;
    // Per panel: integrals of cos(k eta) g and sin(k eta) g from x0 to the panel start.
    std::vector<Complex> cc_start, cs_start;
    // Integrand samples g = f(|psi|) psi at the nodes of each panel.
    std::vector<std::vector<Complex>> g;
};

}  // namespace detail

/// Order-n Picard iterate of the Volterra form
///   psi(x) = psi0(x) + gamma * int_{x0}^{x} sin(k(x-y))/k f(|psi(y)|) psi(y) dy
/// on a spike-free segment, with psi0 the free solution matching the initial
/// data at x0. Integrals use composite Gauss-Legendre panels; the iterate is
/// available at any x in the segment through spectral interpolation of the
/// integrand on each panel.
class PicardSolution {
public:
    WaveState operator()(double x) const {
        if (!(x >= lo_ - 1e-15 && x <= hi_ + 1e-15)) throw ContractViolation("Picard solution evaluated outside its segment");
        const double xi = x - x0_.x;
        const double s = std::sin(k_ * xi), c = std::cos(k_ * xi);
        WaveState out{x, x0_.psi * c + x0_.dpsi * s / k_, -x0_.psi * k_ * s + x0_.dpsi * c};
        if (gamma_ == 0.0 || xi == 0.0) return out;
        const auto& run = xi > 0 ? right_ : left_;
        auto [cc, cs] = cumulative(run, x);
        out.psi += gamma_ / k_ * (s * cc - c * cs);
        out.dpsi += gamma_ * (c * cc + s * cs);
        return out;
    }

    int order() const { return order_; }
    /// max |psi^(n) - psi^(n-1)| over the nodes, for n = 1..order.
    const std::vector<double>& increments() const { return increments_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    friend PicardSolution picard_solve(const ProblemConfig&, double, const WaveState&, int, const PicardOptions&);

    std::pair<Complex, Complex> cumulative(const detail::PanelRun& run, double x) const {
        const double len = std::abs(run.step);
        int p = static_cast<int>(std::floor(std::abs(x - run.x0) / len));
        p = std::clamp(p, 0, run.count - 1);
        const double start = run.x0 + p * run.step;
        const double tau = std::clamp(2.0 * (x - start) / run.step - 1.0, -1.0, 1.0);
        auto w = partial_integration_weights(basis_->rule, basis_->interp, tau);
        Complex cc = run.cc_start[p], cs = run.cs_start[p];
        for (std::size_t m = 0; m < w.size(); ++m) {
            const double y = start + 0.5 * (basis_->rule.nodes[m] + 1.0) * run.step;
            const double eta = y - run.x0;
            const Complex gm = run.g[p][m] * (0.5 * run.step * w[m]);
            cc += std::cos(k_ * eta) * gm;
            cs += std::sin(k_ * eta) * gm;
        }
        return {cc, cs};
    }

    double k_ = 1.0;
    double gamma_ = 0.0;
    WaveState x0_;
    double lo_ = 0.0, hi_ = 1.0;
    int order_ = 0;
    std::vector<double> increments_;
    std::shared_ptr<const detail::PanelBasis> basis_;
    detail::PanelRun left_, right_;
};

inline PicardSolution picard_solve(const ProblemConfig& config, double k, const WaveState& initial, int orders,
                                   const PicardOptions& opts = {}) {
    require_valid(config);
    if (!(k > 0.0)) throw ContractViolation("picard_solve requires k > 0");
    if (orders < 1) throw ContractViolation("picard_solve requires orders >= 1");
    if (!(opts.lo >= 0.0 && opts.hi <= 1.0 && opts.lo < opts.hi)) throw ContractViolation("segment must lie in [0,1]");
    if (!(initial.x >= opts.lo && initial.x <= opts.hi)) throw ContractViolation("initial.x must lie in the segment");
    if (config.potential.spike_between(opts.lo, opts.hi))
        throw ContractViolation("picard_solve segment contains the delta spike; split the segment at a");

    PicardSolution sol;
    sol.k_ = k;
    sol.gamma_ = config.gamma;
    sol.x0_ = initial;
    sol.lo_ = opts.lo;
    sol.hi_ = opts.hi;
    sol.order_ = orders;
    sol.basis_ = std::make_shared<const detail::PanelBasis>(opts.nodes_per_panel);
    const auto& basis = *sol.basis_;
    const auto n = basis.rule.nodes.size();

    auto make_run = [&](double end) {
        detail::PanelRun run;
        run.x0 = initial.x;
        const double len = end - initial.x;
        run.count = std::max(1, static_cast<int>(std::ceil(std::abs(len) * opts.panels_per_unit - 1e-9)));
        run.step = len / run.count;
        if (len == 0.0) run.count = 0;
        run.cc_start.assign(run.count, Complex{});
        run.cs_start.assign(run.count, Complex{});
        run.g.assign(run.count, std::vector<Complex>(n));
        return run;
    };
    sol.left_ = make_run(opts.lo);
    sol.right_ = make_run(opts.hi);
    if (config.gamma == 0.0) return sol;

    auto node_x = [&](const detail::PanelRun& run, int p, std::size_t i) {
        return run.x0 + p * run.step + 0.5 * (basis.rule.nodes[i] + 1.0) * run.step;
    };
    auto free_psi = [&](double x) {
        const double xi = x - initial.x;
        return initial.psi * std::cos(k * xi) + initial.dpsi * std::sin(k * xi) / k;
    };

    // psi^(n) at the nodes of both runs.
    std::vector<detail::PanelRun*> runs{&sol.left_, &sol.right_};
    std::vector<std::vector<std::vector<Complex>>> psi(2);
    for (int r = 0; r < 2; ++r) {
        psi[r].assign(runs[r]->count, std::vector<Complex>(n));
        for (int p = 0; p < runs[r]->count; ++p)
            for (std::size_t i = 0; i < n; ++i) psi[r][p][i] = free_psi(node_x(*runs[r], p, i));
    }

    const auto& f = config.profile;
    for (int order = 1; order <= orders; ++order) {
        double increment = 0.0;
        for (int r = 0; r < 2; ++r) {
            auto& run = *runs[r];
            for (int p = 0; p < run.count; ++p)
                for (std::size_t i = 0; i < n; ++i) run.g[p][i] = f(std::abs(psi[r][p][i])) * psi[r][p][i];

            Complex cc{}, cs{};
            for (int p = 0; p < run.count; ++p) {
                run.cc_start[p] = cc;
                run.cs_start[p] = cs;
                std::vector<Complex> gc(n), gs(n);
                for (std::size_t m = 0; m < n; ++m) {
                    const double eta = node_x(run, p, m) - run.x0;
                    gc[m] = std::cos(k * eta) * run.g[p][m];
                    gs[m] = std::sin(k * eta) * run.g[p][m];
                }
                const double half = 0.5 * run.step;
                for (std::size_t i = 0; i < n; ++i) {
                    Complex ci = cc, si = cs;
                    for (std::size_t m = 0; m < n; ++m) {
                        ci += half * basis.cumulative[i][m] * gc[m];
                        si += half * basis.cumulative[i][m] * gs[m];
                    }
                    const double xi = node_x(run, p, i) - run.x0;
                    const Complex next =
                        free_psi(node_x(run, p, i)) + config.gamma / k * (std::sin(k * xi) * ci - std::cos(k * xi) * si);
                    increment = std::max(increment, std::abs(next - psi[r][p][i]));
                    psi[r][p][i] = next;
                }
                for (std::size_t m = 0; m < n; ++m) {
                    cc += half * basis.rule.weights[m] * gc[m];
                    cs += half * basis.rule.weights[m] * gs[m];
                }
            }
        }
        sol.increments_.push_back(increment);
        const auto& inc = sol.increments_;
        const auto sz = inc.size();
        if (sz >= 3 && inc[sz - 1] > inc[sz - 2] && inc[sz - 2] > inc[sz - 3])
            throw NonConvergent(order, inc.back());
        if (!std::isfinite(increment)) throw NonConvergent(order, increment);
    }
    // The solution object keeps g of the last completed pass, i.e. the integrand
    // built from psi^(orders-1), which is what defines psi^(orders).
    return sol;
}

/// Propagates initial data across [from_x, to_x] with Picard iterates on each
/// spike-free piece, applying the derivative jump at the spike. Independent of
/// the Runge-Kutta path; used to cross-check `integrate`.
inline WaveState picard_propagate(const ProblemConfig& config, double k, double from_x, double to_x,
                                  const WaveState& initial, int orders, PicardOptions opts = {}) {
    if (initial.x != from_x) throw ContractViolation("initial.x must equal from_x");
    auto solve_piece = [&](const WaveState& start, double end) {
        opts.lo = std::min(start.x, end);
        opts.hi = std::max(start.x, end);
        if (opts.lo == opts.hi) return start;
        return picard_solve(config, k, start, orders, opts)(end);
    };
    const auto& v = config.potential;
    WaveState state = initial;
    if (v.spike_between(from_x, to_x)) {
        state = solve_piece(state, v.position);
        state = apply_delta_jump(v.strength, state, to_x > from_x ? Direction::LeftToRight : Direction::RightToLeft);
    }
    return solve_piece(state, to_x);
}

}  // namespace nsskit
