#include "irs_sense/mc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "irs_sense/codebook.hpp"
#include "irs_sense/units.hpp"

namespace irs_sense {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

double binomial_stderr(double p, std::size_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Effective channel per block for one realization: azimuth, channels and
// codebook each come from their own substream keyed by the realization
// index only, so frames never perturb them.
std::vector<std::complex<double>> effective_for_realization(const ScenarioConfig& cfg,
                                                            std::size_t realization) {
    Geometry geom = cfg.geometry;
    if (cfg.random_azimuth) {
        auto arng = substream(cfg.master_seed, Draw::azimuth, realization);
        geom.pu_azimuth_rad = two_pi * arng.uniform();
    }
    const std::size_t elements = cfg.scheme == Scheme::no_irs ? 0 : cfg.elements;
    auto crng = substream(cfg.master_seed, Draw::channel, realization);
    const auto chan = sample_channels(geom, cfg.path_loss, elements, crng);
    if (cfg.scheme == Scheme::genie) return effective_channels(chan, optimal_phases(chan));
    auto brng = substream(cfg.master_seed, Draw::codebook, realization);
    return effective_channels(chan, random_codebook(elements, cfg.blocks, brng));
}

double scheme_statistic(Scheme scheme, const BlockEnergies& t, double alpha) {
    if (scheme == Scheme::sc) return sc_statistic(t);
    return wed_statistic(t, practical_weights(t, alpha));
}

std::size_t count_greater(const std::vector<double>& sorted, double threshold) {
    return sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), threshold);
}
}  // namespace

double ScenarioConfig::pt_mw() const { return dbm_to_mw(pt_dbm); }
double ScenarioConfig::noise_mw() const { return dbm_to_mw(noise_dbm); }
double ScenarioConfig::rho() const { return pt_mw() / noise_mw(); }
FrameLayout ScenarioConfig::layout() const { return FrameLayout(blocks, samples_per_block); }

void ScenarioConfig::validate() const {
    layout();  // checks blocks >= 1, samples_per_block >= 1
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("scenario: alpha must lie in [0, 1)");
    geometry.validate();
    path_loss.validate();
    if (channel_realizations == 0 || frames_per_realization == 0)
        throw std::invalid_argument("scenario: realization and frame counts must be >= 1");
    if (scheme == Scheme::genie) {
        if (blocks != 1)
            throw std::invalid_argument("scenario: the optimal-phase scheme uses a single block");
        if (elements == 0)
            throw std::invalid_argument("scenario: the optimal-phase scheme needs elements >= 1");
    }
}

AnalyticParams analytic_params(const ScenarioConfig& cfg) {
    cfg.validate();
    AnalyticParams p;
    p.blocks = cfg.blocks;
    p.samples_per_block = cfg.samples_per_block;
    p.alpha = cfg.alpha;
    p.rho = cfg.rho();
    p.elements = cfg.scheme == Scheme::no_irs ? 0 : cfg.elements;
    const Geometry& geom = cfg.geometry;
    p.beta_pi = path_gain(distance(geom.pu_pos(), geom.irs_center), cfg.path_loss.exp_pi,
                          cfg.path_loss);
    p.beta_is = path_gain(distance(geom.irs_center, geom.su_pos), cfg.path_loss.exp_is,
                          cfg.path_loss);
    // |h_ps|^2 enters through its ensemble mean beta_ps.
    p.h_ps_abs2 = path_gain(geom.pu_distance_m, cfg.path_loss.exp_ps, cfg.path_loss);
    return p;
}

double trial_statistic(const ScenarioConfig& cfg, std::size_t realization, std::size_t frame,
                       Hypothesis hyp) {
    cfg.validate();
    if (realization >= cfg.channel_realizations || frame >= cfg.frames_per_realization)
        throw std::out_of_range("trial_statistic: trial index outside configured counts");
    std::vector<std::complex<double>> g;
    if (hyp == Hypothesis::h1) g = effective_for_realization(cfg, realization);
    auto frng = substream(cfg.master_seed, Draw::frame, realization, frame,
                          hyp == Hypothesis::h1 ? 1 : 0);
    const auto t = synthesize_block_energies(hyp, g, cfg.layout(), cfg.pt_mw(), cfg.noise_mw(), frng);
    return scheme_statistic(cfg.scheme, t, cfg.alpha);
}

DetectionOutcome run_trial(const ScenarioConfig& cfg, std::size_t realization, std::size_t frame,
                           Hypothesis hyp, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("run_trial: threshold must be > 0");
    return decide(trial_statistic(cfg, realization, frame, hyp), threshold);
}

std::vector<std::vector<double>> collect_statistics_for_alphas(const ScenarioConfig& cfg,
                                                               Hypothesis hyp,
                                                               std::span<const double> alphas) {
    cfg.validate();
    if (alphas.empty())
        throw std::invalid_argument("collect_statistics: need at least one alpha");
    for (const double a : alphas)
        if (!(a >= 0.0 && a < 1.0))
            throw std::invalid_argument("collect_statistics: alpha must lie in [0, 1)");

    const std::size_t realizations = cfg.channel_realizations;
    const std::size_t frames = cfg.frames_per_realization;
    std::vector<std::vector<double>> out(alphas.size());
    for (auto& v : out) v.resize(realizations * frames);

    std::size_t workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, realizations);

    const FrameLayout layout = cfg.layout();
    const double pt = cfg.pt_mw();
    const double noise = cfg.noise_mw();

    // Worker w owns realizations w, w+workers, ...; result slots are
    // disjoint, so the output is identical for every worker count.
    auto body = [&](std::size_t first) {
        for (std::size_t r = first; r < realizations; r += workers) {
            std::vector<std::complex<double>> g;
            if (hyp == Hypothesis::h1) g = effective_for_realization(cfg, r);
            for (std::size_t f = 0; f < frames; ++f) {
                auto frng = substream(cfg.master_seed, Draw::frame, r, f,
                                      hyp == Hypothesis::h1 ? 1 : 0);
                const auto t = synthesize_block_energies(hyp, g, layout, pt, noise, frng);
                for (std::size_t a = 0; a < alphas.size(); ++a)
                    out[a][r * frames + f] = scheme_statistic(cfg.scheme, t, alphas[a]);
            }
        }
    };

    if (workers <= 1) {
        body(0);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                body(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<double> collect_statistics(const ScenarioConfig& cfg, Hypothesis hyp) {
    const double alpha[1] = {cfg.alpha};
    auto stats = collect_statistics_for_alphas(cfg, hyp, alpha);
    return std::move(stats[0]);
}

std::vector<double> roc_threshold_grid(const ScenarioConfig& cfg, double pfa_lo, double pfa_hi,
                                       std::size_t points) {
    if (!(pfa_lo > 0.0 && pfa_hi < 1.0 && pfa_lo < pfa_hi))
        throw std::invalid_argument("roc_threshold_grid: need 0 < pfa_lo < pfa_hi < 1");
    if (points < 2) throw std::invalid_argument("roc_threshold_grid: need at least two points");
    const AnalyticParams params = analytic_params(cfg);
    std::vector<double> grid(points);
    const double log_lo = std::log(pfa_lo);
    const double log_hi = std::log(pfa_hi);
    for (std::size_t i = 0; i < points; ++i) {
        // descending false-alarm targets give an ascending threshold grid
        const double p =
            std::exp(log_hi + (log_lo - log_hi) * static_cast<double>(i) /
                                  static_cast<double>(points - 1));
        grid[i] = threshold_for_pfa(p, params);
    }
    return grid;
}

std::vector<double> sc_threshold_grid(const ScenarioConfig& cfg, double pfa_lo, double pfa_hi,
                                      std::size_t points) {
    if (!(pfa_lo > 0.0 && pfa_hi < 1.0 && pfa_lo < pfa_hi))
        throw std::invalid_argument("sc_threshold_grid: need 0 < pfa_lo < pfa_hi < 1");
    if (points < 2) throw std::invalid_argument("sc_threshold_grid: need at least two points");
    cfg.validate();
    const double m = static_cast<double>(cfg.blocks);
    const double root_nbar = std::sqrt(static_cast<double>(cfg.samples_per_block));
    std::vector<double> grid(points);
    const double log_lo = std::log(pfa_lo);
    const double log_hi = std::log(pfa_hi);
    for (std::size_t i = 0; i < points; ++i) {
        const double p =
            std::exp(log_hi + (log_lo - log_hi) * static_cast<double>(i) /
                                  static_cast<double>(points - 1));
        const double per_block = 1.0 - std::pow(1.0 - p, 1.0 / m);
        grid[i] = 1.0 + q_inv(per_block) / root_nbar;
    }
    return grid;
}

RocCurve roc_sweep(const ScenarioConfig& cfg, std::span<const double> thresholds) {
    if (thresholds.empty()) throw std::invalid_argument("roc_sweep: empty threshold grid");
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i] > thresholds[i - 1]))
            throw std::invalid_argument("roc_sweep: thresholds must be strictly increasing");

    auto h0 = collect_statistics(cfg, Hypothesis::h0);
    auto h1 = collect_statistics(cfg, Hypothesis::h1);
    std::sort(h0.begin(), h0.end());
    std::sort(h1.begin(), h1.end());
    const auto n = h0.size();
    const AnalyticParams params = analytic_params(cfg);

    RocCurve curve;
    curve.trials_per_hypothesis = n;
    curve.points.reserve(thresholds.size());
    for (const double lambda : thresholds) {
        RocPoint pt;
        pt.threshold = lambda;
        pt.pfa_emp = static_cast<double>(count_greater(h0, lambda)) / static_cast<double>(n);
        pt.pmd_emp =
            static_cast<double>(n - count_greater(h1, lambda)) / static_cast<double>(n);
        pt.pfa_stderr = binomial_stderr(pt.pfa_emp, n);
        pt.pmd_stderr = binomial_stderr(pt.pmd_emp, n);
        pt.pfa_analytic = analytic_pfa(lambda, params);
        pt.pmd_bound = pmd_upper_bound(lambda, params);
        curve.points.push_back(pt);
    }
    return curve;
}

SweepResult sweep_blocks(const ScenarioConfig& cfg, std::span<const std::size_t> block_counts,
                         double target_pfa) {
    cfg.validate();
    if (block_counts.empty()) throw std::invalid_argument("sweep_blocks: empty block list");
    const std::size_t total = cfg.layout().total();
    for (const std::size_t m : block_counts)
        if (m == 0 || total % m != 0)
            throw std::invalid_argument("sweep_blocks: every block count must divide N");

    SweepResult result;
    result.parameter = "blocks";
    result.target_pfa = target_pfa;
    for (const std::size_t m : block_counts) {
        ScenarioConfig point_cfg = cfg;
        point_cfg.blocks = m;
        point_cfg.samples_per_block = total / m;
        SweepPoint pt;
        pt.value = static_cast<double>(m);
        pt.threshold = threshold_for_pfa(target_pfa, analytic_params(point_cfg));
        auto stats = collect_statistics(point_cfg, Hypothesis::h1);
        std::sort(stats.begin(), stats.end());
        const auto n = stats.size();
        pt.pmd = static_cast<double>(n - count_greater(stats, pt.threshold)) /
                 static_cast<double>(n);
        pt.pmd_stderr = binomial_stderr(pt.pmd, n);
        result.points.push_back(pt);
    }
    return result;
}

SweepResult sweep_alpha(const ScenarioConfig& cfg, std::span<const double> alphas,
                        double target_pfa) {
    if (alphas.empty()) throw std::invalid_argument("sweep_alpha: empty alpha grid");
    auto stats = collect_statistics_for_alphas(cfg, Hypothesis::h1, alphas);

    SweepResult result;
    result.parameter = "alpha";
    result.target_pfa = target_pfa;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        ScenarioConfig point_cfg = cfg;
        point_cfg.alpha = alphas[i];
        SweepPoint pt;
        pt.value = alphas[i];
        pt.threshold = threshold_for_pfa(target_pfa, analytic_params(point_cfg));
        auto& s = stats[i];
        std::sort(s.begin(), s.end());
        const auto n = s.size();
        pt.pmd = static_cast<double>(n - count_greater(s, pt.threshold)) / static_cast<double>(n);
        pt.pmd_stderr = binomial_stderr(pt.pmd, n);
        result.points.push_back(pt);
    }
    return result;
}

Histogram pdf_histogram(const ScenarioConfig& cfg, Hypothesis hyp, std::size_t bins,
                        std::optional<std::pair<double, double>> range) {
    if (bins == 0) throw std::invalid_argument("pdf_histogram: need at least one bin");
    const auto stats = collect_statistics(cfg, hyp);

    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
        if (!(hi > lo)) throw std::invalid_argument("pdf_histogram: empty range");
    } else {
        lo = *std::min_element(stats.begin(), stats.end());
        hi = *std::max_element(stats.begin(), stats.end());
        if (hi <= lo) hi = lo + 1e-12 * std::max(1.0, std::abs(lo));
    }

    Histogram h;
    h.samples = stats.size();
    h.edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);

    std::vector<std::size_t> counts(bins, 0);
    double sum = 0.0;
    for (const double x : stats) {
        sum += x;
        if (x < lo || x > hi) continue;  // only possible with an explicit range
        auto bin = static_cast<std::size_t>((x - lo) / width);
        if (bin >= bins) bin = bins - 1;
        ++counts[bin];
    }
    h.mean = sum / static_cast<double>(stats.size());
    h.density.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        h.density[i] =
            static_cast<double>(counts[i]) / (static_cast<double>(stats.size()) * width);
    return h;
}

}  // namespace irs_sense
