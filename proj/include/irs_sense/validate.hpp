#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "irs_sense/mc.hpp"

namespace irs_sense {

/// Two-sample Kolmogorov-Smirnov distance (sup difference of empirical CDFs).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// One-sample Kolmogorov-Smirnov distance against a reference CDF.
double ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Reference-law check: |g|^2 under fresh random codewords for one fixed
/// channel draw versus direct draws from the scaled noncentral chi-square
/// law, compared by two-sample KS distance.
struct GainLawReport {
    std::size_t elements = 0;
    std::size_t draws = 0;
    double ks_distance = 0.0;
    double ks_threshold = 0.0;
    double h_ps_abs2 = 0.0;
    bool pass = false;
};

GainLawReport validate_gain_law(std::size_t elements, std::size_t draws, std::uint64_t seed,
                               double ks_threshold = 0.02);

/// Empirical false-alarm rate versus the closed form over a threshold grid.
struct PfaPoint {
    double threshold = 0.0;
    double emp = 0.0;
    double analytic = 0.0;
};

struct PfaReport {
    std::vector<PfaPoint> points;
    std::size_t trials = 0;
    double max_abs_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

PfaReport validate_pfa(const ScenarioConfig& cfg, std::span<const double> thresholds,
                       double tolerance = 0.01);

/// Empirical missed-detection rate versus the closed-form upper bound; a
/// grid point violates when emp > bound + 3 * binomial standard error.
struct PmdBoundPoint {
    double threshold = 0.0;
    double emp = 0.0;
    double emp_stderr = 0.0;
    double bound = 0.0;
    bool violated = false;
};

struct PmdBoundReport {
    std::vector<PmdBoundPoint> points;
    std::size_t trials = 0;
    std::size_t violations = 0;
    bool pass = false;
};

PmdBoundReport validate_pmd_bound(const ScenarioConfig& cfg, std::span<const double> thresholds);

/// Mean of the test statistic against the closed-form expressions: under h0
/// it should sit at 1 + 1/nbar (relative tolerance), under h1 at or above
/// the lower bound minus 3 standard errors.
struct MeansReport {
    double h0_mean_emp = 0.0;
    double h0_mean_expected = 0.0;
    double h0_rel_err = 0.0;
    double h0_tolerance = 0.0;
    double h1_mean_emp = 0.0;
    double h1_mean_lower = 0.0;
    double h1_stderr = 0.0;
    bool h0_pass = false;
    bool h1_pass = false;
    bool pass = false;
};

MeansReport validate_means(const ScenarioConfig& h0_cfg, const ScenarioConfig& h1_cfg,
                           double h0_rel_tolerance = 0.01);

}  // namespace irs_sense
