#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "csv.hpp"
#include "log.hpp"
#include "model.hpp"
#include "perturbation.hpp"
#include "scattering.hpp"

namespace nsskit {

enum class Side { Left, Right };

inline const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

/// F_-(k) of the left Jost solution (side = Left) or G_+(k) of the right one.
/// Zero exactly on a (nonlinear) spectral singularity.
inline Complex nss_residual(const ProblemConfig& config, double k, Complex amplitude, Side side) {
    if (!(k > 0.0)) throw ContractViolation("nss_residual requires k > 0");
    return side == Side::Left ? jost_left(config, k, amplitude).f_minus : jost_right(config, k, amplitude).g_plus;
}

struct NssPoint {
    double k = 0.0;
    double a = 0.0;
    double r = 0.0;
    double s = 0.0;
    double gamma_f = 0.0;     // gamma f(|N|)
    double amplitude = 0.0;   // |N_-| (left) or |N~_+| (right)
    double residual = 0.0;    // |F_-| / (k |N_-|), or |G_+| / (k |N~_+|)
    Side side = Side::Left;
    int newton_iters = 0;
    bool alternate_found = false;   // multi-start reached a different root
};

struct NssGuess {
    double s = 0.0;
    double amplitude = 0.0;
};

struct SolveOptions {
    double tol = 1e-9;
    int max_iters = 50;
    double fd_step = 1e-6;
    int max_halvings = 30;
    double ode_tol = default_ode_tol;
    long max_steps = default_max_steps;
    Side side = Side::Left;
    int multistart = 0;   // extra perturbed seeds probed for a second root
};

/// Amplitude with gamma f(amp) = gamma_f, when one exists. Closed form for the
/// built-in profiles; log-scan plus bisection for custom ones.
inline std::optional<double> amplitude_for(const NonlinearityProfile& f, double gamma, double gamma_f) {
    if (gamma == 0.0 || !std::isfinite(gamma_f)) return std::nullopt;
    const double target = gamma_f / gamma;
    switch (f.kind()) {
        case NonlinearityProfile::Kind::Kerr:
            if (target > 0.0) return std::sqrt(target);
            return std::nullopt;
        case NonlinearityProfile::Kind::Power:
            if (target > 0.0) return std::pow(target, 1.0 / f.parameter());
            return std::nullopt;
        case NonlinearityProfile::Kind::Constant: return std::nullopt;
        case NonlinearityProfile::Kind::Custom: break;
    }
    double prev_amp = 1e-8;
    double prev = f(prev_amp) - target;
    for (int i = 1; i <= 640; ++i) {
        const double amp = 1e-8 * std::pow(10.0, i * 16.0 / 640);
        const double cur = f(amp) - target;
        if (!std::isfinite(cur)) break;
        if (cur == 0.0) return amp;
        if ((prev < 0) != (cur < 0)) {
            double lo = prev_amp, hi = amp, flo = prev;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid) - target;
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_amp = amp;
        prev = cur;
    }
    return std::nullopt;
}

namespace detail {

struct NewtonOutcome {
    double s, amp, residual;
    int iters;
};

inline NewtonOutcome newton_nss(double a, double r, double gamma, const NonlinearityProfile& profile, double k,
                                NssGuess guess, const SolveOptions& opt) {
    auto eval = [&](double s, double amp) -> Complex {
        ProblemConfig cfg{PotentialSpec::delta({r, s}, a), gamma, profile, opt.ode_tol, opt.max_steps};
        try {
            return nss_residual(cfg, k, amp, opt.side) / (k * amp);
        } catch (const StepLimitExceeded&) {
        } catch (const ToleranceFailure&) {
        }
        return {std::numeric_limits<double>::infinity(), 0.0};
    };

    double s = guess.s, amp = guess.amplitude;
    Complex res = eval(s, amp);
    double norm = std::abs(res);
    if (!std::isfinite(norm)) throw NoConvergence(0, norm);

    for (int it = 0; it <= opt.max_iters; ++it) {
        if (norm <= opt.tol) return {s, amp, norm, it};
        if (it == opt.max_iters) break;

        const double hs = opt.fd_step * std::max(std::abs(s), 1e-3);
        const double ha = opt.fd_step * amp;
        const Complex ds = (eval(s + hs, amp) - eval(s - hs, amp)) / (2.0 * hs);
        const Complex da = (eval(s, amp + ha) - eval(s, amp - ha)) / (2.0 * ha);
        const double det = ds.real() * da.imag() - da.real() * ds.imag();
        if (!std::isfinite(det) || det == 0.0) throw NoConvergence(it, norm);
        const double step_s = -(da.imag() * res.real() - da.real() * res.imag()) / det;
        const double step_a = -(-ds.imag() * res.real() + ds.real() * res.imag()) / det;

        double lambda = 1.0;
        bool accepted = false;
        bool outside = false;
        for (int h = 0; h <= opt.max_halvings; ++h, lambda *= 0.5) {
            const double ts = s + lambda * step_s;
            const double ta = amp + lambda * step_a;
            if (!(ta > 0.0)) {
                outside = true;
                continue;
            }
            const Complex tr = eval(ts, ta);
            const double tn = std::abs(tr);
            if (tn < norm) {
                s = ts;
                amp = ta;
                res = tr;
                norm = tn;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (outside) throw NegativeAmplitude(it + 1, amp + step_a);
            throw NoConvergence(it + 1, norm);
        }
    }
    throw NoConvergence(opt.max_iters, norm);
}

}  // namespace detail

/// Solves the exact singularity condition F_-(k) = 0 (or G_+(k) = 0) for the
/// imaginary part s of z = r + i s and the real amplitude, at fixed k, r,
/// gamma and spike position a. Damped Newton with a central-difference
/// Jacobian on the normalized residual F_-/(k amp).
inline NssPoint solve_nss(double a, double r, double gamma, const NonlinearityProfile& profile, double k,
                          NssGuess guess, const SolveOptions& opt = {}) {
    if (!(k > 0.0)) throw ContractViolation("solve_nss requires k > 0");
    if (!(a > 0.0 && a < 1.0)) throw ContractViolation("solve_nss requires a in (0,1)");
    if (!std::isfinite(guess.s) || !(guess.amplitude > 0.0) || !std::isfinite(guess.amplitude))
        throw ContractViolation("solve_nss requires a finite guess with positive amplitude");

    auto out = detail::newton_nss(a, r, gamma, profile, k, guess, opt);
    NssPoint p{k, a, r, out.s, gamma * profile(out.amp), out.amp, out.residual, opt.side, out.iters};

    if (opt.multistart > 0) {
        SolveOptions single = opt;
        single.multistart = 0;
        for (int i = 1; i <= opt.multistart; ++i) {
            const double scale = (i % 2 == 1) ? 1.0 + 0.5 * i : 1.0 / (1.0 + 0.5 * i);
            NssGuess g{p.s + (i % 2 == 1 ? 1.0 : -1.0) * 0.05 * i * std::abs(p.s - 2.0 * k) , p.amplitude * scale};
            try {
                auto alt = detail::newton_nss(a, r, gamma, profile, k, g, single);
                if (std::abs(alt.s - p.s) > 1e-6 * std::abs(p.s) ||
                    std::abs(alt.amp - p.amplitude) > 1e-6 * p.amplitude) {
                    p.alternate_found = true;
                    log::warn("second singular solution at k=" + csv::format(k) + ": s=" + csv::format(alt.s) +
                              " amp=" + csv::format(alt.amp));
                }
            } catch (const Error&) {
            }
        }
    }
    return p;
}

enum class SeedMode { Perturbative, Continuation };

struct SweepOptions {
    SolveOptions solve;
    SeedMode seed_mode = SeedMode::Perturbative;
    int jobs = 1;                    // <= 0: hardware concurrency
    double guard_over_pi = 1e-3;     // asymptote guard band, in k/pi
    bool confirm_gaps = true;        // try Newton inside first-order gaps
    int confirm_iters = 8;
    int confirm_halvings = 8;
};

enum class PointStatus { Converged, Gap, Guard, Failed };

inline const char* to_string(PointStatus s) {
    switch (s) {
        case PointStatus::Converged: return "converged";
        case PointStatus::Gap: return "gap";
        case PointStatus::Guard: return "guard";
        case PointStatus::Failed: return "failed";
    }
    return "";
}

struct SweepEntry {
    double k = 0.0;
    PointStatus status = PointStatus::Failed;
    std::optional<NssPoint> point;
    std::optional<NssPoint> alternate;   // second root found away from the perturbative seed
    std::string note;
};

struct SweepResult {
    std::vector<NssPoint> points;                        // converged, sorted by k
    std::vector<double> asymptotes;                      // k values
    std::vector<std::pair<double, double>> gaps;         // closed intervals in k/pi
    std::vector<SweepEntry> entries;                     // one per grid point
};

namespace detail {

struct ContinuationState {
    std::size_t index = 0;
    double s_shift = 0.0;   // solved minus first-order value
    double g_shift = 0.0;
    bool valid = false;
};

inline SweepEntry sweep_point(double a, double r, double gamma, const NonlinearityProfile& profile, double k,
                              const std::vector<double>& asym, const SweepOptions& opt, ContinuationState* cont,
                              std::size_t index) {
    SweepEntry e{k};
    for (double q : asym)
        if (std::abs(k - q) / pi < opt.guard_over_pi) {
            e.status = PointStatus::Guard;
            e.note = "asymptote guard band";
            return e;
        }
    const auto pert = perturbation::evaluate(k, a, r);
    if (pert.violation == perturbation::PerturbativeNss::Violation::TooCloseToAsymptote) {
        e.status = PointStatus::Guard;
        e.note = "first-order denominator below cutoff";
        return e;
    }
    if (!profile.amplitude_dependent()) {
        e.status = PointStatus::Failed;
        e.note = "profile does not depend on the amplitude";
        return e;
    }

    auto amp = amplitude_for(profile, gamma, pert.gamma_f);
    if (!amp) {
        // First-order sign excludes a real amplitude. Confirm with Newton from
        // the mirrored seed.
        e.status = PointStatus::Gap;
        e.note = "first-order gamma f has the wrong sign";
        if (opt.confirm_gaps) {
            if (auto mirrored_amp = amplitude_for(profile, gamma, -pert.gamma_f)) {
                SolveOptions so = opt.solve;
                so.max_iters = opt.confirm_iters;
                so.max_halvings = opt.confirm_halvings;
                so.multistart = 0;
                try {
                    // A root reached from here is not on the perturbative branch;
                    // it is kept as a flagged second solution.
                    e.alternate = solve_nss(a, r, gamma, profile, k, {pert.s, *mirrored_amp}, so);
                    e.note = "non-perturbative root inside a first-order gap";
                    log::info("k/pi=" + csv::format(k / pi) + ": " + e.note + " (gamma f=" + csv::format(e.alternate->gamma_f) +
                              ")");
                } catch (const Error&) {
                }
            }
        }
        if (cont) cont->valid = false;
        return e;
    }

    NssGuess seed{pert.s, *amp};
    if (cont && opt.seed_mode == SeedMode::Continuation && cont->valid && cont->index + 1 == index) {
        auto camp = amplitude_for(profile, gamma, pert.gamma_f + cont->g_shift);
        if (camp) {
            NssGuess cseed{pert.s + cont->s_shift, *camp};
            auto norm_at = [&](NssGuess g) {
                ProblemConfig cfg{PotentialSpec::delta({r, g.s}, a), gamma, profile, opt.solve.ode_tol,
                                  opt.solve.max_steps};
                try {
                    return std::abs(nss_residual(cfg, k, g.amplitude, opt.solve.side)) / (k * g.amplitude);
                } catch (const Error&) {
                    return std::numeric_limits<double>::infinity();
                }
            };
            if (norm_at(cseed) < norm_at(seed)) seed = cseed;
        }
    }

    try {
        auto p = solve_nss(a, r, gamma, profile, k, seed, opt.solve);
        e.status = PointStatus::Converged;
        e.point = p;
        if (cont) *cont = {index, p.s - pert.s, p.gamma_f - pert.gamma_f, true};
    } catch (const Error& err) {
        e.status = PointStatus::Failed;
        e.note = err.what();
        if (cont) cont->valid = false;
    }
    return e;
}

}  // namespace detail

/// Locates singularities along a k grid. Each grid point is seeded from the
/// first-order formulas (optionally from the previous solution), points in an
/// asymptote guard band are skipped and points where no real amplitude can
/// match the first-order gamma f are reported as gaps.
inline SweepResult sweep_k(double a, double r, double gamma, const NonlinearityProfile& profile,
                           const std::vector<double>& k_grid, const SweepOptions& opt = {}) {
    if (!(a > 0.0 && a < 1.0)) throw ContractViolation("sweep_k requires a in (0,1)");
    for (std::size_t i = 0; i < k_grid.size(); ++i)
        if (!(k_grid[i] > 0.0) || (i > 0 && !(k_grid[i] > k_grid[i - 1])))
            throw ContractViolation("k grid must be positive and strictly increasing");

    SweepResult out;
    if (k_grid.empty()) return out;
    out.asymptotes = perturbation::asymptotes(a, k_grid.back() + opt.guard_over_pi * pi);
    out.entries.resize(k_grid.size());

    int jobs = opt.jobs > 0 ? opt.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min<int>(jobs, static_cast<int>(k_grid.size()));
    // Contiguous blocks keep the output independent of thread scheduling.
    auto work = [&](std::size_t begin, std::size_t end) {
        detail::ContinuationState cont;
        for (std::size_t i = begin; i < end; ++i)
            out.entries[i] = detail::sweep_point(a, r, gamma, profile, k_grid[i], out.asymptotes, opt, &cont, i);
    };
    if (jobs <= 1) {
        work(0, k_grid.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t n = k_grid.size();
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work, n * j / jobs, n * (j + 1) / jobs);
        for (auto& t : pool) t.join();
    }

    std::size_t alternates = 0;
    for (const auto& e : out.entries) {
        if (e.status == PointStatus::Converged) out.points.push_back(*e.point);
        if (e.alternate) ++alternates;
    }
    if (alternates > 0)
        log::warn("sweep a=" + csv::format(a) + ", gamma=" + csv::format(gamma) + ": " +
                  std::to_string(alternates) + " non-perturbative root(s) found inside first-order gaps");

    std::optional<std::pair<double, double>> run;
    for (const auto& e : out.entries) {
        if (e.status == PointStatus::Gap) {
            if (run)
                run->second = e.k / pi;
            else
                run = std::pair{e.k / pi, e.k / pi};
        } else if (run) {
            out.gaps.push_back(*run);
            run.reset();
        }
    }
    if (run) out.gaps.push_back(*run);
    return out;
}

/// Uniform grid k/pi = from, from+step, ..., <= to (all multiplied by pi).
inline std::vector<double> k_grid_over_pi(double from, double to, double step) {
    std::vector<double> out;
    const long n = static_cast<long>(std::floor((to - from) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back((from + static_cast<double>(i) * step) * pi);
    return out;
}

struct Threshold {
    double nt = 0.0;
    double k_at_min = 0.0;
    double k_min = 0.0;
};

/// Smallest |gamma f_-| = |k r / (sin k cos(k(1-2a)))| over k > k_min, the
/// nonlinearity threshold. Grid scan with step pi/2000 (stopped once k |r|
/// exceeds the best value, a lower bound for the objective) followed by
/// golden-section refinement.
inline Threshold nonlinearity_threshold(double a, double r, std::optional<double> k_min_override = std::nullopt) {
    if (!(a > 0.0 && a < 1.0)) throw ContractViolation("nonlinearity_threshold requires a in (0,1)");
    if (r == 0.0 || !std::isfinite(r)) throw ContractViolation("nonlinearity_threshold requires finite r != 0");
    const double w = std::abs(1.0 - 2.0 * a);
    double k_min = w > 1e-12 ? pi / (2.0 * w) : pi;
    if (k_min_override) k_min = std::max(k_min, *k_min_override);

    auto objective = [&](double k) {
        const double d = std::abs(perturbation::denominator(k, a));
        return d > 0.0 ? k * std::abs(r) / d : std::numeric_limits<double>::infinity();
    };

    const double h = pi / 2000.0;
    double best = std::numeric_limits<double>::infinity();
    double k_best = k_min;
    for (long i = 1; i < 100'000'000; ++i) {
        const double k = k_min + static_cast<double>(i) * h;
        if (k * std::abs(r) > best) break;
        const double v = objective(k);
        if (v < best) {
            best = v;
            k_best = k;
        }
    }

    constexpr double invphi = 0.6180339887498949;
    double lo = std::max(k_min, k_best - h), hi = k_best + h;
    double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
    double fc = objective(c), fd = objective(d);
    while (hi - lo > 1e-13 * hi) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = objective(d);
        }
    }
    const double k_star = 0.5 * (lo + hi);
    const double v = objective(k_star);
    if (v <= best) return {v, k_star, k_min};
    return {best, k_best, k_min};
}

}  // namespace nsskit
