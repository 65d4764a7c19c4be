#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "figures.hpp"
#include "irs_sense/io.hpp"
#include "irs_sense/mc.hpp"
#include "irs_sense/validate.hpp"

using namespace irs_sense;

namespace {

std::string join_command_line(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

struct AnalyticCli {
    std::string expr;
    double lambda = 1.023;
    double target_pfa = 0.1;
    std::size_t blocks = 100;
    std::size_t nbar = 100;
    double alpha = 0.0;
    std::size_t elements = 1024;
    double pt_dbm = 6.0;
    double noise_dbm = -70.0;
};

int run_analytic(const AnalyticCli& a) {
    ScenarioConfig cfg;
    cfg.blocks = a.blocks;
    cfg.samples_per_block = a.nbar;
    cfg.alpha = a.alpha;
    cfg.elements = a.elements;
    cfg.pt_dbm = a.pt_dbm;
    cfg.noise_dbm = a.noise_dbm;
    const AnalyticParams params = analytic_params(cfg);
    double value = 0.0;
    if (a.expr == "pfa")
        value = analytic_pfa(a.lambda, params);
    else if (a.expr == "threshold")
        value = threshold_for_pfa(a.target_pfa, params);
    else if (a.expr == "pmd-bound")
        value = pmd_upper_bound(a.lambda, params);
    else {
        std::cerr << "error: unknown expression '" << a.expr
                  << "' (expected pfa, threshold or pmd-bound)" << std::endl;
        return 2;
    }
    std::printf("%.12g\n", value);
    return 0;
}

struct ValidateCli {
    std::string suite;
    std::size_t elements = 1024;
    std::size_t draws = 10000;
    std::size_t blocks = 100;
    std::size_t nbar = 100;
    double alpha = 0.0;
    double pt_dbm = 6.0;
    std::size_t realizations = 1000;
    std::size_t frames = 100;
    double tolerance = 0.01;
    double ks_threshold = 0.02;
    std::size_t grid_points = 0;  // 0 = suite default
    std::uint64_t seed = 12345;
    unsigned threads = 0;
};

ScenarioConfig validate_config(const ValidateCli& v) {
    ScenarioConfig cfg;
    cfg.elements = v.elements;
    cfg.blocks = v.blocks;
    cfg.samples_per_block = v.nbar;
    cfg.alpha = v.alpha;
    cfg.pt_dbm = v.pt_dbm;
    cfg.channel_realizations = v.realizations;
    cfg.frames_per_realization = v.frames;
    cfg.master_seed = v.seed;
    cfg.workers = v.threads;
    return cfg;
}

int run_validate(const ValidateCli& v) {
    if (v.suite == "lemma1") {
        const auto report = validate_gain_law(v.elements, v.draws, v.seed, v.ks_threshold);
        std::printf("gain-law check: L=%zu draws=%zu |h_ps|^2=%.6g\n", report.elements,
                    report.draws, report.h_ps_abs2);
        std::printf("ks_distance = %.6g (threshold %.6g)\n", report.ks_distance,
                    report.ks_threshold);
        std::printf("%s\n", report.pass ? "PASS" : "FAIL");
        return report.pass ? 0 : 1;
    }
    if (v.suite == "pfa") {
        const auto grid = linspace(1.0, 1.05, v.grid_points ? v.grid_points : 20);
        const auto report = validate_pfa(validate_config(v), grid, v.tolerance);
        std::printf("false-alarm check: %zu h0 trials over %zu thresholds\n", report.trials,
                    report.points.size());
        std::printf("max |emp - analytic| = %.6g (tolerance %.6g)\n", report.max_abs_err,
                    report.tolerance);
        std::printf("%s\n", report.pass ? "PASS" : "FAIL");
        return report.pass ? 0 : 1;
    }
    if (v.suite == "pmd-bound") {
        ScenarioConfig cfg = validate_config(v);
        cfg.random_azimuth = false;  // pinned worst-case geometry
        const auto grid = linspace(1.0, 1.06, v.grid_points ? v.grid_points : 50);
        const auto report = validate_pmd_bound(cfg, grid);
        std::printf("missed-detection bound check: %zu h1 trials over %zu thresholds\n",
                    report.trials, report.points.size());
        std::printf("violations (emp > bound + 3*stderr) = %zu\n", report.violations);
        std::printf("%s\n", report.pass ? "PASS" : "FAIL");
        return report.pass ? 0 : 1;
    }
    if (v.suite == "means") {
        const ScenarioConfig cfg = validate_config(v);
        const auto report = validate_means(cfg, cfg, v.tolerance);
        std::printf("h0 mean: emp=%.8g expected=%.8g rel_err=%.3g (tolerance %.3g) -> %s\n",
                    report.h0_mean_emp, report.h0_mean_expected, report.h0_rel_err,
                    report.h0_tolerance, report.h0_pass ? "ok" : "violated");
        std::printf("h1 mean: emp=%.8g lower_bound=%.8g stderr=%.3g -> %s\n", report.h1_mean_emp,
                    report.h1_mean_lower, report.h1_stderr, report.h1_pass ? "ok" : "violated");
        std::printf("%s\n", report.pass ? "PASS" : "FAIL");
        return report.pass ? 0 : 1;
    }
    std::cerr << "error: unknown suite '" << v.suite
              << "' (expected lemma1, pfa, pmd-bound or means)" << std::endl;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-aided spectrum sensing: analytics, Monte Carlo figures and validation"};
    app.set_config("--config", "", "configuration file (key = value lines, [section] per command)");
    app.require_subcommand(1);

    // ---- figure ----
    figures::FigureOptions fig;
    fig.command_line = join_command_line(argc, argv);
    std::vector<std::size_t> fig_blocks_values;
    std::vector<double> fig_alpha_values;
    std::size_t fig_elements = 0, fig_nbar = 0;
    double fig_pt = 0.0, fig_noise = 0.0;
    auto* figure = app.add_subcommand("figure", "reproduce one figure as CSV series + manifest");
    figure->add_option("id", fig.id, "figure id: 2a, 2b, 3, 4a or 4b")->required();
    figure->add_option("--out", fig.out_dir, "output directory")->envname("IRS_SENSE_OUTDIR");
    figure->add_option("--seed", fig.seed, "master seed");
    figure->add_option("--trials", fig.realizations, "channel realizations")
        ->check(CLI::PositiveNumber);
    figure->add_option("--frames", fig.frames, "frames per realization")
        ->check(CLI::PositiveNumber);
    figure->add_option("--threads", fig.threads, "worker threads (0 = hardware)");
    auto* opt_l = figure->add_option("--L", fig_elements, "reflecting elements");
    figure->add_option("--M", fig_blocks_values, "blocks per frame (repeatable: figure 4a sweep)");
    auto* opt_n = figure->add_option("--nbar", fig_nbar, "observations per block");
    figure->add_option("--alpha", fig_alpha_values,
                       "scaling factor (repeatable: figure 4b grid)");
    auto* opt_p = figure->add_option("--pt-dbm", fig_pt, "transmit power [dBm]");
    auto* opt_s = figure->add_option("--noise-dbm", fig_noise, "noise power [dBm]");

    // ---- analytic ----
    AnalyticCli ana;
    auto* analytic = app.add_subcommand("analytic", "evaluate one closed-form expression");
    analytic->add_option("expr", ana.expr, "pfa, threshold or pmd-bound")->required();
    analytic->add_option("--lambda", ana.lambda, "detection threshold");
    analytic->add_option("--pfa", ana.target_pfa, "target false-alarm probability");
    analytic->add_option("--M", ana.blocks, "blocks per frame");
    analytic->add_option("--nbar", ana.nbar, "observations per block");
    analytic->add_option("--alpha", ana.alpha, "scaling factor");
    analytic->add_option("--L", ana.elements, "reflecting elements");
    analytic->add_option("--pt-dbm", ana.pt_dbm, "transmit power [dBm]");
    analytic->add_option("--noise-dbm", ana.noise_dbm, "noise power [dBm]");

    // ---- validate ----
    ValidateCli val;
    auto* validate = app.add_subcommand("validate", "empirical checks against the closed forms");
    validate->add_option("suite", val.suite, "lemma1, pfa, pmd-bound or means")->required();
    validate->add_option("--L", val.elements, "reflecting elements");
    validate->add_option("--draws", val.draws, "gain-law sample size");
    validate->add_option("--M", val.blocks, "blocks per frame");
    validate->add_option("--nbar", val.nbar, "observations per block");
    validate->add_option("--alpha", val.alpha, "scaling factor");
    validate->add_option("--pt-dbm", val.pt_dbm, "transmit power [dBm]");
    validate->add_option("--trials", val.realizations, "channel realizations")
        ->check(CLI::PositiveNumber);
    validate->add_option("--frames", val.frames, "frames per realization")
        ->check(CLI::PositiveNumber);
    validate->add_option("--tolerance", val.tolerance, "pass tolerance (pfa / means suites)");
    validate->add_option("--ks-threshold", val.ks_threshold, "pass threshold (lemma1 suite)");
    validate->add_option("--points", val.grid_points, "threshold grid size");
    validate->add_option("--seed", val.seed, "master seed");
    validate->add_option("--threads", val.threads, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*figure) {
            if (*opt_l) fig.elements = fig_elements;
            if (!fig_blocks_values.empty()) {
                if (fig.id == "4a" || fig_blocks_values.size() > 1)
                    fig.block_list = fig_blocks_values;
                else
                    fig.blocks = fig_blocks_values[0];
            }
            if (*opt_n) fig.nbar = fig_nbar;
            if (!fig_alpha_values.empty()) {
                if (fig.id == "4b" || fig_alpha_values.size() > 1)
                    fig.alpha_list = fig_alpha_values;
                else
                    fig.alpha = fig_alpha_values[0];
            }
            if (*opt_p) fig.pt_dbm = fig_pt;
            if (*opt_s) fig.noise_dbm = fig_noise;
            return figures::run_figure(fig);
        }
        if (*analytic) return run_analytic(ana);
        if (*validate) return run_validate(val);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
