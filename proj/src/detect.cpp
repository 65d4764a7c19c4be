#include "irs_sense/detect.hpp"

#include <algorithm>
#include <stdexcept>

namespace irs_sense {

void DetectorConfig::validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("detector: alpha must lie in [0, 1)");
    if (!(threshold > 0.0)) throw std::invalid_argument("detector: threshold must be > 0");
}

WeightVector practical_weights(const BlockEnergies& t, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("practical_weights: alpha must lie in [0, 1)");
    WeightVector wv;
    wv.w.resize(t.blocks());
    double sum = 0.0;
    for (std::size_t m = 0; m < t.blocks(); ++m) {
        const double clipped = t.t[m] > alpha ? t.t[m] - alpha : 0.0;
        wv.w[m] = clipped;
        sum += clipped;
        if (clipped == 0.0) wv.discarded.push_back(m);
    }
    if (sum > 0.0)
        for (auto& w : wv.w) w /= sum;
    // sum == 0: every block discarded, weights stay all-zero.
    return wv;
}

WeightVector genie_weights(std::span<const std::complex<double>> g) {
    WeightVector wv;
    wv.w.resize(g.size());
    double sum = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        wv.w[m] = std::norm(g[m]);
        sum += wv.w[m];
    }
    if (!(sum > 0.0)) throw std::invalid_argument("genie_weights: all-zero channel vector");
    for (std::size_t m = 0; m < g.size(); ++m) {
        wv.w[m] /= sum;
        if (wv.w[m] == 0.0) wv.discarded.push_back(m);
    }
    return wv;
}

double wed_statistic(const BlockEnergies& t, const WeightVector& w) {
    if (w.w.size() != t.blocks())
        throw std::invalid_argument("wed_statistic: weight/energy length mismatch");
    double stat = 0.0;
    for (std::size_t m = 0; m < t.blocks(); ++m) stat += w.w[m] * t.t[m];
    return stat;
}

double sc_statistic(const BlockEnergies& t) {
    if (t.blocks() == 0) throw std::invalid_argument("sc_statistic: empty block energies");
    return *std::max_element(t.t.begin(), t.t.end());
}

DetectionOutcome decide(double statistic, double threshold) {
    return {statistic, statistic > threshold ? Hypothesis::h1 : Hypothesis::h0};
}

}  // namespace irs_sense
