#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irs_sense/analytic.hpp"
#include "irs_sense/channel.hpp"
#include "irs_sense/detect.hpp"
#include "irs_sense/frame.hpp"

namespace irs_sense {

/// Full description of one Monte Carlo experiment. Powers are accepted in
/// dBm here (the configuration boundary) and converted once.
///
/// Trial structure: per channel realization a PU azimuth, a channel draw
/// and a codebook are generated; frames_per_realization independent frames
/// are then synthesized against those. Every random quantity comes from a
/// substream keyed by (master_seed, purpose, realization, frame,
/// hypothesis), so any trial can be reproduced in isolation and aggregate
/// results do not depend on execution order or worker count.
struct ScenarioConfig {
    std::size_t elements = 1024;          // L
    std::size_t blocks = 100;             // M
    std::size_t samples_per_block = 100;  // nbar
    double pt_dbm = 6.0;
    double noise_dbm = -70.0;
    double alpha = 0.0;
    Scheme scheme = Scheme::wed;
    Geometry geometry{};
    PathLossModel path_loss{};
    bool random_azimuth = true;  // fresh uniform azimuth per realization
    std::size_t channel_realizations = 1000;
    std::size_t frames_per_realization = 100;
    std::uint64_t master_seed = 12345;
    unsigned workers = 0;  // 0 = one per hardware thread

    double pt_mw() const;
    double noise_mw() const;
    double rho() const;
    FrameLayout layout() const;
    std::size_t trials() const { return channel_realizations * frames_per_realization; }
    void validate() const;
};

/// Closed-form parameters matching a scenario. The per-realization
/// |h_ps|^2 is represented by its ensemble mean beta_ps, the convention
/// used whenever a single analytic curve accompanies averaged empirical
/// results.
AnalyticParams analytic_params(const ScenarioConfig& cfg);

/// Test statistic of one (realization, frame, hypothesis) trial.
double trial_statistic(const ScenarioConfig& cfg, std::size_t realization, std::size_t frame,
                       Hypothesis hyp);

/// Full single-trial pipeline: channels -> codebook -> frame -> detector.
DetectionOutcome run_trial(const ScenarioConfig& cfg, std::size_t realization, std::size_t frame,
                           Hypothesis hyp, double threshold);

/// Statistics of all trials, indexed [realization * frames_per_realization
/// + frame]. Runs on cfg.workers threads; the result is identical for any
/// worker count.
std::vector<double> collect_statistics(const ScenarioConfig& cfg, Hypothesis hyp);

/// Same trials evaluated under several scaling factors at once (the frame
/// synthesis is shared; only the weighting differs). Result is indexed
/// [alpha_index][trial].
std::vector<std::vector<double>> collect_statistics_for_alphas(const ScenarioConfig& cfg,
                                                               Hypothesis hyp,
                                                               std::span<const double> alphas);

struct RocPoint {
    double threshold = 0.0;
    double pfa_emp = 0.0;
    double pfa_stderr = 0.0;
    double pmd_emp = 0.0;
    double pmd_stderr = 0.0;
    double pfa_analytic = 0.0;
    double pmd_bound = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    std::size_t trials_per_hypothesis = 0;
};

/// Empirical and closed-form operating points over a strictly increasing
/// threshold grid. One set of h0/h1 trials is shared by all thresholds.
RocCurve roc_sweep(const ScenarioConfig& cfg, std::span<const double> thresholds);

/// Threshold grid covering false-alarm targets [pfa_lo, pfa_hi]
/// (log-spaced), mapped through threshold_for_pfa and returned ascending.
std::vector<double> roc_threshold_grid(const ScenarioConfig& cfg, double pfa_lo, double pfa_hi,
                                       std::size_t points);

/// Threshold grid for the selection-combining statistic, whose operating
/// range sits at the upper order statistic of the block energies: the
/// frame-level target p maps to the per-block target q = 1 - (1-p)^(1/M),
/// inverted through the per-block Gaussian approximation as
/// lambda = 1 + Q^{-1}(q)/sqrt(nbar).
std::vector<double> sc_threshold_grid(const ScenarioConfig& cfg, double pfa_lo, double pfa_hi,
                                      std::size_t points);

struct SweepPoint {
    double value = 0.0;      // swept parameter value
    double threshold = 0.0;  // calibrated lambda at the target false-alarm rate
    double pmd = 0.0;
    double pmd_stderr = 0.0;
};

struct SweepResult {
    std::string parameter;
    double target_pfa = 0.1;
    std::vector<SweepPoint> points;
};

/// Missed-detection rate versus block count M at a fixed total observation
/// count; every M must divide it. The threshold is recalibrated per point.
SweepResult sweep_blocks(const ScenarioConfig& cfg, std::span<const std::size_t> block_counts,
                         double target_pfa = 0.1);

/// Missed-detection rate versus scaling factor alpha; one shared set of
/// frames, recalibrated threshold per point.
SweepResult sweep_alpha(const ScenarioConfig& cfg, std::span<const double> alphas,
                        double target_pfa = 0.1);

struct Histogram {
    std::vector<double> edges;    // bins + 1 entries
    std::vector<double> density;  // normalized: sum(density * width) == 1
    std::size_t samples = 0;
    double mean = 0.0;
};

/// Binned density of the test statistic under the given hypothesis. With no
/// explicit range the bins span the observed sample range (total mass 1).
Histogram pdf_histogram(const ScenarioConfig& cfg, Hypothesis hyp, std::size_t bins = 60,
                        std::optional<std::pair<double, double>> range = std::nullopt);

}  // namespace irs_sense
