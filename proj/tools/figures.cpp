#include "figures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "irs_sense/io.hpp"
#include "irs_sense/mc.hpp"

namespace irs_sense::figures {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

// exceedance / at-most rates over a sorted sample
double rate_above(const std::vector<double>& sorted, double x) {
    const auto n = sorted.size();
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(above) / static_cast<double>(n);
}

double rate_at_most(const std::vector<double>& sorted, double x) {
    return 1.0 - rate_above(sorted, x);
}

std::vector<double> sorted_statistics(const ScenarioConfig& cfg, Hypothesis hyp,
                                      const std::string& label) {
    std::cout << "  collecting " << cfg.trials() << " " << label << " trials..." << std::endl;
    auto stats = collect_statistics(cfg, hyp);
    std::sort(stats.begin(), stats.end());
    return stats;
}

ScenarioConfig base_config(const FigureOptions& opt) {
    ScenarioConfig cfg;
    cfg.master_seed = opt.seed;
    cfg.channel_realizations = opt.realizations;
    cfg.frames_per_realization = opt.frames;
    cfg.workers = opt.threads;
    if (opt.elements) cfg.elements = *opt.elements;
    if (opt.blocks) cfg.blocks = *opt.blocks;
    if (opt.nbar) cfg.samples_per_block = *opt.nbar;
    if (opt.alpha) cfg.alpha = *opt.alpha;
    if (opt.pt_dbm) cfg.pt_dbm = *opt.pt_dbm;
    if (opt.noise_dbm) cfg.noise_dbm = *opt.noise_dbm;
    return cfg;
}

struct FigureRun {
    FigureRun(const FigureOptions& opt, const ScenarioConfig& cfg) : options(opt) {
        std::filesystem::create_directories(opt.out_dir);
        manifest.command = opt.command_line;
        manifest.master_seed = opt.seed;
        manifest.started_utc = utc_timestamp();
        start = std::chrono::steady_clock::now();
        describe("figure", opt.id);
        describe("seed", std::to_string(opt.seed));
        describe("realizations", std::to_string(opt.realizations));
        describe("frames_per_realization", std::to_string(opt.frames));
        describe("blocks", std::to_string(cfg.blocks));
        describe("samples_per_block", std::to_string(cfg.samples_per_block));
        describe("alpha", format_value(cfg.alpha));
        describe("pt_dbm", format_value(cfg.pt_dbm));
        describe("noise_dbm", format_value(cfg.noise_dbm));
        describe("sensing_range_m", format_value(cfg.geometry.sensing_range_m));
        describe("pu_distance_m", format_value(cfg.geometry.pu_distance_m));
        describe("irs_height_m", format_value(cfg.geometry.irs_center.z));
        describe("random_azimuth", cfg.random_azimuth ? "true" : "false");
        describe("ref_loss_db", format_value(cfg.path_loss.ref_loss_db));
        describe("pathloss_exponents",
                 format_value(cfg.path_loss.exp_is) + "/" + format_value(cfg.path_loss.exp_ps) +
                     "/" + format_value(cfg.path_loss.exp_pi));
    }

    void describe(const std::string& key, const std::string& value) {
        manifest.config.emplace_back(key, value);
        std::cout << key << " = " << value << std::endl;
    }

    // CSV metadata shared by every series; deliberately excludes anything
    // that varies between reruns of the same configuration (time, workers).
    void stamp(CsvWriter& csv) const {
        csv.metadata("tool", std::string(tool_name) + " " + tool_version);
        for (const auto& [key, value] : manifest.config) csv.metadata(key, value);
    }

    void finish(const std::filesystem::path& file) {
        manifest.add_output(file);
        std::cout << "wrote " << file.string() << std::endl;
    }

    void close() {
        manifest.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        manifest.write(options.out_dir);
        std::cout << "wrote " << (options.out_dir / "run_manifest.json").string() << std::endl;
    }

    const FigureOptions& options;
    RunManifest manifest;
    std::chrono::steady_clock::time_point start;
};

int reject(const std::string& message) {
    std::cerr << "error: " << message << std::endl;
    return 2;
}

// ---- figure 2a: false-alarm and missed-detection rates versus lambda ----

int figure_2a(const FigureOptions& opt) {
    if (opt.elements)
        return reject("figure 2a plots a fixed element set {64, 256, 1024}; --L does not apply");
    ScenarioConfig cfg = base_config(opt);
    cfg.scheme = Scheme::wed;
    cfg.elements = 1024;

    FigureRun run(opt, cfg);
    const auto grid = linspace(1.0, 1.05, 26);

    const auto h0 = sorted_statistics(cfg, Hypothesis::h0, "h0");

    std::vector<std::vector<double>> pmd_by_elements;
    for (const std::size_t elements : {std::size_t{64}, std::size_t{256}, std::size_t{1024}}) {
        ScenarioConfig series = cfg;
        series.elements = elements;
        pmd_by_elements.push_back(
            sorted_statistics(series, Hypothesis::h1, "h1 L=" + std::to_string(elements)));
    }
    ScenarioConfig no_irs = cfg;
    no_irs.scheme = Scheme::no_irs;
    const auto h1_no_irs = sorted_statistics(no_irs, Hypothesis::h1, "h1 no-IRS");

    const AnalyticParams params = analytic_params(cfg);

    CsvWriter csv(opt.out_dir / "figure2a.csv");
    run.stamp(csv);
    const std::vector<std::string> columns{"lambda",        "pfa_analytic",  "pfa_emp",
                                           "pmd_emp_L64",   "pmd_emp_L256",  "pmd_emp_L1024",
                                           "pmd_emp_noirs", "pmd_bound_L1024"};
    csv.header(columns);
    for (const double lambda : grid) {
        const double row[] = {lambda,
                              analytic_pfa(lambda, params),
                              rate_above(h0, lambda),
                              rate_at_most(pmd_by_elements[0], lambda),
                              rate_at_most(pmd_by_elements[1], lambda),
                              rate_at_most(pmd_by_elements[2], lambda),
                              rate_at_most(h1_no_irs, lambda),
                              pmd_upper_bound(lambda, params)};
        csv.row(row);
    }
    csv.close();
    run.finish(csv.path());
    run.close();
    return 0;
}

// ---- figure 2b: density of the test statistic under both hypotheses ----

int figure_2b(const FigureOptions& opt) {
    ScenarioConfig cfg = base_config(opt);
    cfg.scheme = Scheme::wed;
    if (!opt.elements) cfg.elements = 1024;

    FigureRun run(opt, cfg);
    run.describe("elements", std::to_string(cfg.elements));

    auto h0 = collect_statistics(cfg, Hypothesis::h0);
    std::cout << "  h0 series done" << std::endl;
    auto h1_irs = collect_statistics(cfg, Hypothesis::h1);
    std::cout << "  h1 with-IRS series done" << std::endl;
    ScenarioConfig no_irs = cfg;
    no_irs.scheme = Scheme::no_irs;
    auto h1_no = collect_statistics(no_irs, Hypothesis::h1);
    std::cout << "  h1 no-IRS series done" << std::endl;

    double lo = h0[0], hi = h0[0];
    for (const auto* series : {&h0, &h1_irs, &h1_no})
        for (const double x : *series) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    constexpr std::size_t bins = 80;
    const double width = (hi - lo) / bins;
    auto density = [&](const std::vector<double>& series) {
        std::vector<double> d(bins, 0.0);
        for (const double x : series) {
            auto b = static_cast<std::size_t>((x - lo) / width);
            if (b >= bins) b = bins - 1;
            d[b] += 1.0;
        }
        for (auto& v : d) v /= static_cast<double>(series.size()) * width;
        return d;
    };
    const auto d0 = density(h0), d1 = density(h1_irs), d2 = density(h1_no);

    CsvWriter csv(opt.out_dir / "figure2b.csv");
    run.stamp(csv);
    const std::vector<std::string> columns{"t", "pdf_h0", "pdf_h1_irs", "pdf_h1_noirs"};
    csv.header(columns);
    for (std::size_t b = 0; b < bins; ++b) {
        const double row[] = {lo + width * (static_cast<double>(b) + 0.5), d0[b], d1[b], d2[b]};
        csv.row(row);
    }
    csv.close();
    run.finish(csv.path());
    run.close();
    return 0;
}

// ---- figure 3: ROC curves of the combining schemes ----

int figure_3(const FigureOptions& opt) {
    ScenarioConfig cfg = base_config(opt);
    if (!opt.elements) cfg.elements = 1024;
    if (!opt.alpha) cfg.alpha = 0.2;

    FigureRun run(opt, cfg);
    run.describe("elements", std::to_string(cfg.elements));

    struct Series {
        const char* name;
        ScenarioConfig cfg;
    };
    std::vector<Series> series;
    {
        ScenarioConfig wed = cfg;
        wed.scheme = Scheme::wed;
        series.push_back({"wed_irs", wed});

        ScenarioConfig sc = cfg;
        sc.scheme = Scheme::sc;
        series.push_back({"sc", sc});

        ScenarioConfig no_irs = cfg;
        no_irs.scheme = Scheme::no_irs;
        series.push_back({"wed_noirs", no_irs});

        ScenarioConfig genie = cfg;
        genie.scheme = Scheme::genie;
        genie.samples_per_block = cfg.blocks * cfg.samples_per_block;
        genie.blocks = 1;
        genie.alpha = 0.0;
        series.push_back({"optimal", genie});
    }

    const std::vector<std::string> columns{"lambda",     "pfa_emp",      "pfa_stderr",
                                           "pmd_emp",    "pmd_stderr",   "pfa_analytic",
                                           "pmd_bound"};
    for (const auto& s : series) {
        std::cout << "series " << s.name << std::endl;
        const auto grid = s.cfg.scheme == Scheme::sc
                              ? sc_threshold_grid(s.cfg, 0.005, 0.6, 25)
                              : roc_threshold_grid(s.cfg, 0.005, 0.6, 25);
        const auto curve = roc_sweep(s.cfg, grid);
        CsvWriter csv(opt.out_dir / ("figure3_" + std::string(s.name) + ".csv"));
        run.stamp(csv);
        csv.metadata("series", s.name);
        csv.metadata("trials_per_hypothesis", std::to_string(curve.trials_per_hypothesis));
        csv.header(columns);
        for (const auto& pt : curve.points) {
            const double row[] = {pt.threshold,  pt.pfa_emp,      pt.pfa_stderr, pt.pmd_emp,
                                  pt.pmd_stderr, pt.pfa_analytic, pt.pmd_bound};
            csv.row(row);
        }
        csv.close();
        run.finish(csv.path());
    }
    run.close();
    return 0;
}

// ---- figure 4a: missed detection versus block count ----

int figure_4a(const FigureOptions& opt) {
    ScenarioConfig cfg = base_config(opt);
    cfg.scheme = Scheme::wed;
    if (!opt.elements) cfg.elements = 1024;
    if (!opt.alpha) cfg.alpha = 0.5;

    std::vector<std::size_t> blocks = opt.block_list;
    if (blocks.empty()) blocks = {1, 2, 5, 10, 20, 50, 100};
    const std::size_t total = cfg.blocks * cfg.samples_per_block;
    for (const std::size_t m : blocks)
        if (m == 0 || total % m != 0)
            return reject("figure 4a: every block count must divide N = " + std::to_string(total));

    FigureRun run(opt, cfg);
    run.describe("elements", std::to_string(cfg.elements));
    run.describe("target_pfa", "0.1");

    std::cout << "sweeping " << blocks.size() << " block counts..." << std::endl;
    const auto sweep = sweep_blocks(cfg, blocks, 0.1);

    CsvWriter csv(opt.out_dir / "figure4a.csv");
    run.stamp(csv);
    const std::vector<std::string> columns{"blocks", "lambda", "pmd", "pmd_stderr"};
    csv.header(columns);
    for (const auto& pt : sweep.points) {
        const double row[] = {pt.value, pt.threshold, pt.pmd, pt.pmd_stderr};
        csv.row(row);
    }
    csv.close();
    run.finish(csv.path());
    run.close();
    return 0;
}

// ---- figure 4b: missed detection versus the scaling factor ----

int figure_4b(const FigureOptions& opt) {
    if (opt.blocks) return reject("figure 4b derives M from the per-series nbar; --M does not apply");
    ScenarioConfig cfg = base_config(opt);
    cfg.scheme = Scheme::wed;
    if (!opt.elements) cfg.elements = 1024;
    if (!opt.pt_dbm) cfg.pt_dbm = 8.0;

    std::vector<double> alphas = opt.alpha_list;
    if (alphas.empty()) alphas = linspace(0.0, 0.9, 10);
    std::vector<std::size_t> nbars;
    if (opt.nbar)
        nbars = {*opt.nbar};
    else
        nbars = {20, 100, 500};

    const std::size_t n_total = 10000;  // observations per frame, shared by all series
    for (const std::size_t nbar : nbars)
        if (nbar == 0 || n_total % nbar != 0)
            return reject("figure 4b: every nbar must divide N = " + std::to_string(n_total));

    FigureRun run(opt, cfg);
    run.describe("elements", std::to_string(cfg.elements));
    run.describe("target_pfa", "0.1");

    const std::vector<std::string> columns{"alpha", "lambda", "pmd", "pmd_stderr"};
    for (const std::size_t nbar : nbars) {
        ScenarioConfig series = cfg;
        series.samples_per_block = nbar;
        series.blocks = n_total / nbar;
        std::cout << "series nbar=" << nbar << std::endl;
        const auto sweep = sweep_alpha(series, alphas, 0.1);
        CsvWriter csv(opt.out_dir / ("figure4b_nbar" + std::to_string(nbar) + ".csv"));
        run.stamp(csv);
        csv.metadata("series_nbar", std::to_string(nbar));
        csv.header(columns);
        for (const auto& pt : sweep.points) {
            const double row[] = {pt.value, pt.threshold, pt.pmd, pt.pmd_stderr};
            csv.row(row);
        }
        csv.close();
        run.finish(csv.path());
    }
    run.close();
    return 0;
}

}  // namespace

int run_figure(const FigureOptions& opt) {
    const bool wants_block_list = opt.id == "4a";
    const bool wants_alpha_list = opt.id == "4b";
    if (!opt.block_list.empty() && !wants_block_list)
        return reject("a block-count list only applies to figure 4a");
    if (!opt.alpha_list.empty() && !wants_alpha_list)
        return reject("an alpha grid only applies to figure 4b");

    if (opt.id == "2a") return figure_2a(opt);
    if (opt.id == "2b") return figure_2b(opt);
    if (opt.id == "3") return figure_3(opt);
    if (opt.id == "4a") return figure_4a(opt);
    if (opt.id == "4b") return figure_4b(opt);
    return reject("unknown figure id '" + opt.id + "' (expected 2a, 2b, 3, 4a or 4b)");
}

}  // namespace irs_sense::figures
