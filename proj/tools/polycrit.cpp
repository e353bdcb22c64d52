#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polycrit/circle_measure.hpp"
#include "polycrit/companion.hpp"
#include "polycrit/config.hpp"
#include "polycrit/eig.hpp"
#include "polycrit/experiment.hpp"
#include "polycrit/limit_function.hpp"
#include "polycrit/report.hpp"
#include "polycrit/svg.hpp"
#include "polycrit/version.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_nonconverged = 3;

int run_simulate(const std::string& config_path, bool strict, bool have_seed,
                 std::uint64_t seed, int jobs, bool fail_on_nonconverged) {
    polycrit::ExperimentConfig cfg;
    try {
        cfg = polycrit::parse_config(polycrit::detail::read_file(config_path), strict);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    }
    if (have_seed) cfg.seed = seed;

    const polycrit::ExperimentReport rep = polycrit::run_experiment(cfg, jobs);
    polycrit::emit_report(rep, cfg.output_dir);
    polycrit::emit_plots(rep, cfg.output_dir);

    std::printf("measure: %s\n", rep.measure_text.c_str());
    std::printf("rows: %zu  nonconverged: %d\n", rep.rows.size(),
                rep.nonconverged_count());
    std::printf("%8s %10s %12s %12s\n", "n", "trials", "median_w1", "median_ks");
    for (const polycrit::AggregateRow& a : polycrit::aggregate_rows(rep))
        std::printf("%8d %10d %12.5g %12.5g\n", a.n, a.trials, a.median_w1, a.median_ks);
    std::printf("report written to %s\n", cfg.output_dir.c_str());

    if (fail_on_nonconverged && rep.nonconverged_count() > 0) {
        std::fprintf(stderr, "solver failed to converge in %d trial(s)\n",
                     rep.nonconverged_count());
        return exit_nonconverged;
    }
    return exit_ok;
}

int run_trace_check(int n, int k, std::uint64_t seed, const std::string& measure_expr) {
    polycrit::CircleMeasure measure;
    try {
        measure = polycrit::parse_measure_expr(measure_expr);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    }
    if (n < 2 || k < 1) {
        std::fprintf(stderr, "config error: need n >= 2 and k >= 1\n");
        return exit_config;
    }
    if (n - 1 > polycrit::dense_oracle_max_order) {
        std::fprintf(stderr, "config error: dense oracle capped at 512\n");
        return exit_config;
    }

    const polycrit::RootSample roots = polycrit::sample(measure, n, seed);
    const polycrit::StructuredCompanion m = polycrit::build(roots.points);
    const std::vector<polycrit::Complex> eig =
        polycrit::dense_eigenvalues(polycrit::materialize(m));

    std::printf("n=%d seed=%llu measure=%s\n", n,
                static_cast<unsigned long long>(seed), measure_expr.c_str());
    std::printf("%3s %24s %24s %12s\n", "k", "trace(M^k)", "sum eig^k", "rel_err");
    bool ok = true;
    for (int kk = 1; kk <= k; ++kk) {
        const polycrit::Complex structured = polycrit::power_sum_trace(m, kk);
        polycrit::Complex direct{0.0, 0.0};
        for (const polycrit::Complex& lambda : eig) direct += polycrit::ipow(lambda, kk);
        const double rel = std::abs(structured - direct) / std::abs(direct);
        std::printf("%3d %11.4e%+11.4ei %11.4e%+11.4ei %12.3e\n", kk, structured.real(),
                    structured.imag(), direct.real(), direct.imag(), rel);
        if (!(rel <= 1e-9)) ok = false;
    }
    if (!ok) {
        std::fprintf(stderr, "structured and dense power sums disagree\n");
        return 1;
    }
    return exit_ok;
}

int run_limit_zeros(const std::string& measure_expr, double r, double tol) {
    polycrit::CircleMeasure measure;
    try {
        measure = polycrit::parse_measure_expr(measure_expr);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    }
    if (!(r > 0.0) || r >= 1.0) {
        std::fprintf(stderr, "config error: r must lie in (0,1)\n");
        return exit_config;
    }
    try {
        const polycrit::DiscZeroCount result =
            polycrit::count_zeros_in_disc(measure, r, tol);
        if (result.identically_zero) {
            std::printf("limit function is identically zero for %s\n",
                        measure_expr.c_str());
        } else {
            std::printf("zeros of the limit function in |z| < %g: %d\n", r,
                        result.count);
        }
        return exit_ok;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
}

int run_plot(const std::string& dir) {
    polycrit::PlotInput in;
    try {
        in = polycrit::load_plot_input(dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    }
    polycrit::emit_plots(in, dir);
    std::printf("wrote %s/scatter.svg, angles.svg, convergence.svg\n", dir.c_str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "polycrit: critical points of random polynomials with roots on the unit "
        "circle"};
    app.set_version_flag("--version", std::string(polycrit::version));
    app.require_subcommand(1);

    // simulate
    std::string config_path;
    std::uint64_t seed_override = 0;
    int jobs = 1;
    bool strict = true;
    bool fail_on_nonconverged = false;
    CLI::App* sim = app.add_subcommand("simulate", "run an experiment from a config file");
    sim->add_option("config", config_path, "experiment config file")->required();
    CLI::Option* seed_opt =
        sim->add_option("--seed", seed_override, "override the config seed");
    sim->add_option("--jobs", jobs, "parallel trial workers")->check(CLI::PositiveNumber);
    sim->add_flag("--strict,!--no-strict", strict,
                  "reject unknown config keys (default on)");
    sim->add_flag("--fail-on-nonconverged", fail_on_nonconverged,
                  "exit 3 if any trial fails to converge");

    // trace-check
    int tc_n = 0, tc_k = 8;
    std::uint64_t tc_seed = 1;
    std::string tc_measure = "uniform";
    CLI::App* tc = app.add_subcommand(
        "trace-check", "compare structured power-sum traces against dense eigenvalues");
    tc->add_option("--n", tc_n, "polynomial degree")->required();
    tc->add_option("--k", tc_k, "highest power")->required();
    tc->add_option("--seed", tc_seed, "sample seed")->required();
    tc->add_option("--measure", tc_measure, "root measure expression");

    // limit-zeros
    std::string lz_measure;
    double lz_r = 0.5, lz_tol = 1e-9;
    CLI::App* lz =
        app.add_subcommand("limit-zeros", "count zeros of the limit function in a disc");
    lz->add_option("--measure", lz_measure, "root measure expression")->required();
    lz->add_option("--r", lz_r, "disc radius in (0,1)")->required();
    lz->add_option("--tol", lz_tol, "series truncation tolerance");

    // plot
    std::string plot_dir;
    CLI::App* pl = app.add_subcommand("plot", "regenerate SVG plots from a report directory");
    pl->add_option("dir", plot_dir, "report directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (sim->parsed())
            return run_simulate(config_path, strict, seed_opt->count() > 0,
                                seed_override, jobs, fail_on_nonconverged);
        if (tc->parsed()) return run_trace_check(tc_n, tc_k, tc_seed, tc_measure);
        if (lz->parsed()) return run_limit_zeros(lz_measure, lz_r, lz_tol);
        if (pl->parsed()) return run_plot(plot_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_ok;
}
