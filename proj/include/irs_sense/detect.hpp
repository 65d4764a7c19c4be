#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "irs_sense/frame.hpp"

namespace irs_sense {

/// Combining weights plus the set of discarded block indices. Outside the
/// degenerate all-discarded case the weights are nonnegative and sum to 1.
struct WeightVector {
    std::vector<double> w;
    std::vector<std::size_t> discarded;

    bool all_discarded() const { return !w.empty() && discarded.size() == w.size(); }
};

enum class Scheme { wed, genie, sc, no_irs };

struct DetectorConfig {
    double alpha = 0.0;      // scaling factor in [0, 1)
    double threshold = 1.0;  // lambda > 0
    Scheme scheme = Scheme::wed;

    void validate() const;
};

struct DetectionOutcome {
    double statistic = 0.0;
    Hypothesis decision = Hypothesis::h0;
};

/// w_m = max(t_m - alpha, 0) / sum_k max(t_k - alpha, 0). Blocks with
/// t_m <= alpha are discarded. If every block is discarded the weights are
/// all zero (the statistic then evaluates to 0 and any positive threshold
/// decides h0).
WeightVector practical_weights(const BlockEnergies& t, double alpha);

/// Channel-aware reference weights w_m = |g_m|^2 / sum_k |g_k|^2; invariant
/// under any common scaling of g. All-zero g is invalid.
WeightVector genie_weights(std::span<const std::complex<double>> g);

/// Weighted test statistic sum_m w_m * t_m.
double wed_statistic(const BlockEnergies& t, const WeightVector& w);

/// Selection combining: the largest block energy, ties to the lowest index.
double sc_statistic(const BlockEnergies& t);

/// h1 iff statistic > threshold (strict).
DetectionOutcome decide(double statistic, double threshold);

}  // namespace irs_sense
