// nsskit command-line front end.
//
// Exit codes: 0 success, 1 usage/config/runtime error, 2 resonance (divergent
// amplitude), 3 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <locale>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsskit/nsskit.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace nsskit;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_resonance = 2;
constexpr int exit_validation = 3;

struct Globals {
    std::string config_path;
    std::optional<double> ode_tol;
    std::string out;
    int jobs = 0;
    std::string seed_mode = "perturbative";
};

// Collects outputs of one command and writes manifest.json when an output
// directory is in use.
class Run {
public:
    Run(std::string command, const Globals& g) : command_(std::move(command)), g_(g) {
        start_ = std::chrono::steady_clock::now();
    }

    json& params() { return params_; }

    bool to_files() const { return !g_.out.empty(); }

    // Stream for a named output: a file in the output directory, else stdout.
    std::ostream& open(const std::string& name) {
        if (!to_files()) return std::cout;
        fs::create_directories(g_.out);
        const auto path = (fs::path(g_.out) / name).string();
        auto f = std::make_unique<std::ofstream>(path);
        if (!*f) throw ConfigError("cannot write '" + path + "'");
        f->imbue(std::locale::classic());
        files_.push_back(std::move(f));
        paths_.push_back(path);
        return *files_.back();
    }

    void add_output(const std::string& path) { paths_.push_back(path); }

    void finish() {
        for (auto& f : files_) f->close();
        if (!to_files()) return;
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json m{{"command", command_},
               {"config_path", g_.config_path},
               {"parameters", params_},
               {"output_paths", paths_},
               {"wall_time", wall},
               {"tool_version", NSSKIT_VERSION}};
        std::ofstream mf(fs::path(g_.out) / "manifest.json");
        mf << m.dump(2) << '\n';
    }

private:
    std::string command_;
    const Globals& g_;
    json params_ = json::object();
    std::vector<std::unique_ptr<std::ofstream>> files_;
    std::vector<std::string> paths_;
    std::chrono::steady_clock::time_point start_;
};

ProblemConfig load(const Globals& g) {
    ProblemConfig cfg = g.config_path.empty() ? ProblemConfig{} : load_config(g.config_path);
    if (g.ode_tol) cfg.ode_tol = *g.ode_tol;
    require_valid(cfg);
    return cfg;
}

Complex to_complex(const std::vector<double>& v) {
    return {v.at(0), v.size() > 1 ? v[1] : 0.0};
}

SweepOptions sweep_options(const Globals& g, const ProblemConfig& cfg) {
    SweepOptions o;
    o.solve.ode_tol = cfg.ode_tol;
    o.solve.max_steps = cfg.max_steps;
    o.jobs = g.jobs;
    o.seed_mode = g.seed_mode == "continuation" ? SeedMode::Continuation : SeedMode::Perturbative;
    return o;
}

// ---------------------------------------------------------------------------

struct ScatterArgs {
    double k = 1.0;
    std::vector<double> n_minus{1.0}, n_plus{1.0};
};

int cmd_scatter(const Globals& g, const ScatterArgs& a) {
    auto cfg = load(g);
    Run run("scatter", g);
    run.params() = {{"k", a.k}, {"n_minus", a.n_minus}, {"n_plus", a.n_plus}};
    ScatteringAmplitudes amp;
    try {
        amp = scatter(cfg, {a.k, to_complex(a.n_minus), to_complex(a.n_plus)});
    } catch (const DivergentAmplitude& e) {
        std::cerr << "nsskit: resonance at k=" << csv::format(a.k) << ": " << e.what() << '\n';
        return exit_resonance;
    }
    auto& os = run.open("scatter.csv");
    os << "k,re_Rl,im_Rl,re_Tl,im_Tl,re_Rr,im_Rr,re_Tr,im_Tr\n";
    csv::RowWriter row(os);
    row << a.k << amp.r_left.real() << amp.r_left.imag() << amp.t_left.real() << amp.t_left.imag()
        << amp.r_right.real() << amp.r_right.imag() << amp.t_right.real() << amp.t_right.imag();
    row.end();
    run.finish();
    return exit_ok;
}

struct JostArgs {
    double k = 1.0;
    std::string side = "left";
    std::vector<double> amp{1.0};
    std::string trajectory;
};

int cmd_jost(const Globals& g, const JostArgs& a) {
    auto cfg = load(g);
    if (!(a.k > 0.0)) throw ConfigError("k must be positive");
    Run run("jost", g);
    run.params() = {{"k", a.k}, {"side", a.side}, {"amplitude", a.amp}};
    const Complex n = to_complex(a.amp);
    if (n == 0.0) throw ConfigError("amplitude must be nonzero");
    const bool left = a.side == "left";
    const WaveState init = left ? WaveState{0.0, n, -I * a.k * n} : WaveState{1.0, n, I * a.k * n};
    auto res = integrate(cfg, a.k, init.x, left ? 1.0 : 0.0, init, !a.trajectory.empty());
    const auto& end = res.final;
    const Complex plus = end.dpsi + I * a.k * end.psi, minus = end.dpsi - I * a.k * end.psi;

    auto& os = run.open("jost.csv");
    os << "k,side,re_psi,im_psi,re_dpsi,im_dpsi,re_plus,im_plus,re_minus,im_minus,steps\n";
    csv::RowWriter row(os);
    row << a.k << a.side << end.psi.real() << end.psi.imag() << end.dpsi.real() << end.dpsi.imag()
        << plus.real() << plus.imag() << minus.real() << minus.imag() << res.steps_taken;
    row.end();

    if (!a.trajectory.empty()) {
        const auto path = run.to_files() ? (fs::path(g.out) / a.trajectory).string() : a.trajectory;
        std::ofstream tf(path);
        if (!tf) throw ConfigError("cannot write '" + path + "'");
        write_trajectory_csv(tf, *res.trajectory);
        run.add_output(path);
    }
    run.finish();
    return exit_ok;
}

struct PerturbArgs {
    double k = 1.0;
    std::optional<double> a, r;
};

int cmd_perturb(const Globals& g, const PerturbArgs& args) {
    auto cfg = load(g);
    const double a = args.a.value_or(cfg.potential.is_delta() ? cfg.potential.position : 0.5);
    const double r = args.r.value_or(cfg.potential.is_delta() ? cfg.potential.strength.real() : 1e-4);
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("a must lie strictly inside (0,1)");
    if (!(args.k > 0.0)) throw ConfigError("k must be positive");
    Run run("perturb", g);
    run.params() = {{"k", args.k}, {"a", a}, {"r", r}};
    const auto p = perturbation::evaluate(args.k, a, r);
    auto& os = run.open("perturb.csv");
    os << "k,a,r,gamma_f,s,valid,violation\n";
    csv::RowWriter row(os);
    row << p.k << p.a << p.r << p.gamma_f << p.s << (p.valid ? 1 : 0) << perturbation::to_string(p.violation);
    row.end();
    run.finish();
    return exit_ok;
}

struct SweepArgs {
    std::optional<double> a, r, gamma;
    double from = 0.0025, to = 10.0, step = 0.0025;
    std::string side = "left";
    int multistart = 0;
    bool no_confirm = false;
};

void write_sweep_rows(std::ostream& os, const SweepResult& res) {
    os << "k_over_pi,gamma_f,s,amplitude,residual,converged\n";
    csv::RowWriter row(os);
    for (const auto& e : res.entries) {
        if (e.point) {
            const auto& p = *e.point;
            row << e.k / pi << p.gamma_f << p.s << p.amplitude << p.residual << 1;
        } else {
            row << e.k / pi << "" << "" << "" << "" << 0;
        }
        row.end();
    }
}

int cmd_sweep(const Globals& g, const SweepArgs& args) {
    auto cfg = load(g);
    const double a = args.a.value_or(cfg.potential.is_delta() ? cfg.potential.position : 0.5);
    const double r = args.r.value_or(cfg.potential.is_delta() ? cfg.potential.strength.real() : 1e-4);
    const double gamma = args.gamma.value_or(cfg.gamma);
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("a must lie strictly inside (0,1)");
    if (!(args.step > 0.0) || !(args.from > 0.0) || !(args.to >= args.from))
        throw ConfigError("k/pi grid needs 0 < from <= to and step > 0");

    Run run("sweep", g);
    run.params() = {{"a", a},         {"r", r},       {"gamma", gamma},
                    {"from", args.from}, {"to", args.to}, {"step", args.step},
                    {"side", args.side}, {"seed_mode", g.seed_mode}, {"profile", cfg.profile.name()}};
    auto opt = sweep_options(g, cfg);
    opt.solve.side = args.side == "right" ? Side::Right : Side::Left;
    opt.solve.multistart = args.multistart;
    opt.confirm_gaps = !args.no_confirm;
    const auto res = sweep_k(a, r, gamma, cfg.profile, k_grid_over_pi(args.from, args.to, args.step), opt);

    write_sweep_rows(run.open("sweep.csv"), res);
    if (run.to_files()) {
        auto& st = run.open("sweep_status.csv");
        st << "k_over_pi,status,note\n";
        csv::RowWriter row(st);
        for (const auto& e : res.entries) {
            row << e.k / pi << to_string(e.status) << e.note;
            row.end();
        }
    }
    run.finish();
    return exit_ok;
}

struct Figure1Args {
    double r = 1e-4, to = 10.0, step = 0.0025;
};

int cmd_figure1(Globals g, const Figure1Args& args) {
    if (g.out.empty()) g.out = "figure1";
    auto cfg = load(g);
    Run run("figure1", g);
    run.params() = {{"r", args.r}, {"to", args.to}, {"step", args.step}, {"seed_mode", g.seed_mode}};

    const struct {
        const char* tag;
        double a;
    } cases[] = {{"1_2", 0.5}, {"1_3", 1.0 / 3.0}, {"1_4", 0.25}, {"1_5", 0.2}};
    const auto grid = k_grid_over_pi(args.step, args.to, args.step);
    auto opt = sweep_options(g, cfg);
    const auto kerr = NonlinearityProfile::kerr();

    auto& asym = run.open("asymptotes.csv");
    asym << "a,k_over_pi\n";
    csv::RowWriter arow(asym);

    std::size_t total_expected = 0, total_converged = 0;
    for (const auto& c : cases) {
        const auto pos = sweep_k(c.a, args.r, 1.0, kerr, grid, opt);
        const auto neg = sweep_k(c.a, args.r, -1.0, kerr, grid, opt);

        SweepResult merged;
        merged.entries.resize(grid.size());
        std::size_t expected = 0, converged = 0;
        auto& st = run.open(std::string("nss_a") + c.tag + "_status.csv");
        st << "k_over_pi,positive,negative,note\n";
        csv::RowWriter srow(st);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& p = pos.entries[i];
            const auto& n = neg.entries[i];
            merged.entries[i] = p.point ? p : n;
            auto skipped = [](const SweepEntry& e) {
                return e.status == PointStatus::Gap || e.status == PointStatus::Guard;
            };
            if (!(skipped(p) && skipped(n))) {
                ++expected;
                if (p.point || n.point) ++converged;
            }
            std::string note = p.note;
            if (!n.note.empty()) note += (note.empty() ? "" : "; ") + n.note;
            srow << grid[i] / pi << to_string(p.status) << to_string(n.status) << note;
            srow.end();
        }
        write_sweep_rows(run.open(std::string("nss_a") + c.tag + ".csv"), merged);
        for (double q : pos.asymptotes)
            if (q <= grid.back() * (1.0 + 1e-12)) {
                arow << c.a << q / pi;
                arow.end();
            }
        total_expected += expected;
        total_converged += converged;
        const double cov = expected ? static_cast<double>(converged) / expected : 1.0;
        std::cout << "a=" << csv::format(c.a) << " converged " << converged << "/" << expected
                  << " non-gap points (" << csv::format(std::round(cov * 1e4) / 100) << "%)\n";
    }
    const double coverage = total_expected ? static_cast<double>(total_converged) / total_expected : 1.0;
    run.params()["coverage"] = coverage;
    run.finish();
    if (coverage < 0.95) {
        std::cerr << "nsskit: figure1 coverage " << csv::format(coverage) << " below 0.95\n";
        return exit_validation;
    }
    return exit_ok;
}

struct ThresholdArgs {
    std::optional<double> a, r, k_min;
};

int cmd_threshold(const Globals& g, const ThresholdArgs& args) {
    auto cfg = load(g);
    const double a = args.a.value_or(cfg.potential.is_delta() ? cfg.potential.position : 0.5);
    const double r = args.r.value_or(cfg.potential.is_delta() ? cfg.potential.strength.real() : 1e-4);
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("a must lie strictly inside (0,1)");
    if (r == 0.0) throw ConfigError("r must be nonzero");
    Run run("threshold", g);
    run.params() = {{"a", a}, {"r", r}};
    const auto t = nonlinearity_threshold(a, r, args.k_min);
    auto& os = run.open("threshold.csv");
    os << "a,r,k_min,k_at_min,nt\n";
    csv::RowWriter row(os);
    row << a << r << t.k_min << t.k_at_min << t.nt;
    row.end();
    run.finish();
    return exit_ok;
}

int cmd_validate(const Globals& g, std::vector<std::string> suites) {
    validation::Options opt;
    if (!g.config_path.empty()) opt.ode_tol = load(g).ode_tol;
    if (g.ode_tol) opt.ode_tol = *g.ode_tol;
    if (!(opt.ode_tol > 0.0)) throw ConfigError("ode_tol must be positive");
    if (suites.empty()) suites = validation::suite_names();
    Run run("validate", g);
    run.params() = {{"ode_tol", opt.ode_tol}, {"suites", suites}};
    auto& os = run.open("validate.jsonl");
    bool all = true;
    for (const auto& name : suites) {
        const auto r = validation::run_suite(name, opt);
        all = all && r.passed;
        json line{{"suite", r.name},           {"passed", r.passed}, {"cases", r.cases},
                  {"failures", r.failures},    {"max_error", r.max_error}, {"bound", r.bound}};
        if (!r.note.empty()) line["note"] = r.note;
        os << line.dump() << '\n';
        if (run.to_files()) std::cout << line.dump() << '\n';
    }
    json summary{{"summary", true}, {"passed", all}, {"ode_tol", opt.ode_tol}};
    os << summary.dump() << '\n';
    run.finish();
    return all ? exit_ok : exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
    std::cout.imbue(std::locale::classic());
    CLI::App app{"nsskit: nonlinear spectral singularities of a delta potential"};
    app.set_version_flag("--version", std::string(NSSKIT_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "configuration file (key = value)")->check(CLI::ExistingFile);
    app.add_option("--ode-tol", g.ode_tol, "integrator tolerance, overrides the config")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output directory (default: stdout, figure1: ./figure1)");
    app.add_option("--jobs", g.jobs, "worker threads for sweeps (0: hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed-mode", g.seed_mode, "Newton seeding along k")
        ->check(CLI::IsMember({"perturbative", "continuation"}));

    ScatterArgs sa;
    auto* scatter_cmd = app.add_subcommand("scatter", "reflection and transmission amplitudes at one k");
    scatter_cmd->add_option("--k", sa.k, "wavenumber")->required()->check(CLI::PositiveNumber);
    scatter_cmd->add_option("--n-minus", sa.n_minus, "left Jost amplitude: RE [IM]")->expected(1, 2);
    scatter_cmd->add_option("--n-plus", sa.n_plus, "right Jost amplitude: RE [IM]")->expected(1, 2);

    JostArgs ja;
    auto* jost_cmd = app.add_subcommand("jost", "Jost solution data at one k");
    jost_cmd->add_option("--k", ja.k, "wavenumber")->required()->check(CLI::PositiveNumber);
    jost_cmd->add_option("--side", ja.side)->check(CLI::IsMember({"left", "right"}));
    jost_cmd->add_option("--amp", ja.amp, "Jost amplitude: RE [IM]")->expected(1, 2);
    jost_cmd->add_option("--trajectory", ja.trajectory, "also write the trajectory CSV to this file");

    PerturbArgs pa;
    auto* perturb_cmd = app.add_subcommand("perturb", "first-order singularity locus at one k");
    perturb_cmd->add_option("--k", pa.k)->required()->check(CLI::PositiveNumber);
    perturb_cmd->add_option("--a", pa.a, "spike position (default: config)");
    perturb_cmd->add_option("--r", pa.r, "Re z (default: config)");

    SweepArgs swa;
    auto* sweep_cmd = app.add_subcommand("sweep", "locate singularities along a k/pi grid");
    sweep_cmd->add_option("--a", swa.a, "spike position (default: config)");
    sweep_cmd->add_option("--r", swa.r, "Re z (default: config)");
    sweep_cmd->add_option("--gamma", swa.gamma, "coupling (default: config)");
    sweep_cmd->add_option("--from", swa.from, "first k/pi");
    sweep_cmd->add_option("--to", swa.to, "last k/pi");
    sweep_cmd->add_option("--step", swa.step, "k/pi spacing");
    sweep_cmd->add_option("--side", swa.side)->check(CLI::IsMember({"left", "right"}));
    sweep_cmd->add_option("--multistart", swa.multistart, "extra seeds probed for a second root");
    sweep_cmd->add_flag("--no-confirm-gaps", swa.no_confirm, "skip Newton inside first-order gaps");

    Figure1Args fa;
    auto* figure1_cmd = app.add_subcommand("figure1", "four-position singularity map, both signs of gamma");
    figure1_cmd->add_option("--r", fa.r);
    figure1_cmd->add_option("--to", fa.to, "last k/pi");
    figure1_cmd->add_option("--step", fa.step, "k/pi spacing");

    ThresholdArgs ta;
    auto* threshold_cmd = app.add_subcommand("threshold", "minimum |gamma f| for a singularity");
    threshold_cmd->add_option("--a", ta.a, "spike position (default: config)");
    threshold_cmd->add_option("--r", ta.r, "Re z (default: config)");
    threshold_cmd->add_option("--k-min", ta.k_min, "raise the lower end of the k range");

    std::vector<std::string> suites;
    auto* validate_cmd = app.add_subcommand("validate", "cross-oracle validation suites");
    validate_cmd->add_option("--suite", suites, "run only these suites")
        ->check(CLI::IsMember(validation::suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*scatter_cmd) return cmd_scatter(g, sa);
        if (*jost_cmd) return cmd_jost(g, ja);
        if (*perturb_cmd) return cmd_perturb(g, pa);
        if (*sweep_cmd) return cmd_sweep(g, swa);
        if (*figure1_cmd) return cmd_figure1(g, fa);
        if (*threshold_cmd) return cmd_threshold(g, ta);
        if (*validate_cmd) return cmd_validate(g, suites);
    } catch (const DivergentAmplitude& e) {
        std::cerr << "nsskit: resonance: " << e.what() << '\n';
        return exit_resonance;
    } catch (const ConfigError& e) {
        std::cerr << "nsskit: config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "nsskit: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
