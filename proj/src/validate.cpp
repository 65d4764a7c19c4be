#include "irs_sense/validate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "irs_sense/codebook.hpp"

namespace irs_sense {

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

GainLawReport validate_gain_law(std::size_t elements, std::size_t draws, std::uint64_t seed,
                               double ks_threshold) {
    if (elements == 0 || draws == 0)
        throw std::invalid_argument("validate_gain_law: need elements >= 1 and draws >= 1");

    const Geometry geom{};
    const PathLossModel model{};
    auto crng = substream(seed, Draw::channel, 0);
    const auto chan = sample_channels(geom, model, elements, crng);

    // Empirical side: |g|^2 over fresh random codewords for this one channel
    // draw, generated in column chunks to bound memory at large L.
    std::vector<double> empirical;
    empirical.reserve(draws);
    auto brng = substream(seed, Draw::codebook, 0);
    constexpr std::size_t chunk = 128;
    while (empirical.size() < draws) {
        const std::size_t m = std::min(chunk, draws - empirical.size());
        const auto book = random_codebook(elements, m, brng);
        for (const auto& g : effective_channels(chan, book)) empirical.push_back(std::norm(g));
    }

    const auto params = GainLawParams::from(chan);
    std::vector<double> law(draws);
    auto lrng = substream(seed, Draw::gain_law, 0);
    for (auto& v : law) v = sample_gain_law(params, lrng);

    GainLawReport report;
    report.elements = elements;
    report.draws = draws;
    report.h_ps_abs2 = params.h_ps_abs2;
    report.ks_threshold = ks_threshold;
    report.ks_distance = ks_two_sample(std::move(empirical), std::move(law));
    report.pass = report.ks_distance < ks_threshold;
    return report;
}

PfaReport validate_pfa(const ScenarioConfig& cfg, std::span<const double> thresholds,
                       double tolerance) {
    if (thresholds.empty()) throw std::invalid_argument("validate_pfa: empty threshold grid");
    auto stats = collect_statistics(cfg, Hypothesis::h0);
    std::sort(stats.begin(), stats.end());
    const double n = static_cast<double>(stats.size());
    const AnalyticParams params = analytic_params(cfg);

    PfaReport report;
    report.trials = stats.size();
    report.tolerance = tolerance;
    for (const double lambda : thresholds) {
        PfaPoint pt;
        pt.threshold = lambda;
        pt.emp = static_cast<double>(stats.end() -
                                     std::upper_bound(stats.begin(), stats.end(), lambda)) /
                 n;
        pt.analytic = analytic_pfa(lambda, params);
        report.max_abs_err = std::max(report.max_abs_err, std::abs(pt.emp - pt.analytic));
        report.points.push_back(pt);
    }
    report.pass = report.max_abs_err <= tolerance;
    return report;
}

PmdBoundReport validate_pmd_bound(const ScenarioConfig& cfg, std::span<const double> thresholds) {
    if (thresholds.empty()) throw std::invalid_argument("validate_pmd_bound: empty threshold grid");
    auto stats = collect_statistics(cfg, Hypothesis::h1);
    std::sort(stats.begin(), stats.end());
    const double n = static_cast<double>(stats.size());
    const AnalyticParams params = analytic_params(cfg);

    PmdBoundReport report;
    report.trials = stats.size();
    for (const double lambda : thresholds) {
        PmdBoundPoint pt;
        pt.threshold = lambda;
        pt.emp = static_cast<double>(std::upper_bound(stats.begin(), stats.end(), lambda) -
                                     stats.begin()) /
                 n;
        pt.emp_stderr = std::sqrt(pt.emp * (1.0 - pt.emp) / n);
        pt.bound = pmd_upper_bound(lambda, params);
        pt.violated = pt.emp > pt.bound + 3.0 * pt.emp_stderr;
        if (pt.violated) ++report.violations;
        report.points.push_back(pt);
    }
    report.pass = report.violations == 0;
    return report;
}

MeansReport validate_means(const ScenarioConfig& h0_cfg, const ScenarioConfig& h1_cfg,
                           double h0_rel_tolerance) {
    MeansReport report;
    report.h0_tolerance = h0_rel_tolerance;

    {
        const auto stats = collect_statistics(h0_cfg, Hypothesis::h0);
        double sum = 0.0;
        for (const double s : stats) sum += s;
        report.h0_mean_emp = sum / static_cast<double>(stats.size());
        report.h0_mean_expected = mean_statistic_bounds(analytic_params(h0_cfg)).h0_mean_approx;
        report.h0_rel_err =
            std::abs(report.h0_mean_emp - report.h0_mean_expected) / report.h0_mean_expected;
        report.h0_pass = report.h0_rel_err <= h0_rel_tolerance;
    }
    {
        const auto stats = collect_statistics(h1_cfg, Hypothesis::h1);
        const double n = static_cast<double>(stats.size());
        double sum = 0.0;
        for (const double s : stats) sum += s;
        const double mean = sum / n;
        double var = 0.0;
        for (const double s : stats) var += (s - mean) * (s - mean);
        var /= (n - 1.0);
        report.h1_mean_emp = mean;
        report.h1_stderr = std::sqrt(var / n);
        report.h1_mean_lower = mean_statistic_bounds(analytic_params(h1_cfg)).h1_mean_lower;
        report.h1_pass = report.h1_mean_emp >= report.h1_mean_lower - 3.0 * report.h1_stderr;
    }
    report.pass = report.h0_pass && report.h1_pass;
    return report;
}

}  // namespace irs_sense
