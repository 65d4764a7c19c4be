#include "irs_sense/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace irs_sense {

namespace {
constexpr double sqrt1_2 = 0.70710678118654752440084436210485;
constexpr double inv_sqrt_2pi = 0.39894228040143267793994605993438;

// Acklam's rational approximation of the standard normal quantile,
// |relative error| < 1.2e-9; polished below by Newton iterations.
double norm_quantile_approx(double p) {
    static const double a[6] = {-39.69683028665376, 220.9460984245205,  -275.9285104469687,
                                138.3577518672690,  -30.66479806614716, 2.506628277459239};
    static const double b[5] = {-54.47609879822406, 161.5858368580409, -155.6989798598866,
                                66.80131188771972, -13.28068155288572};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838,     -2.549732539343734,
                                4.374664141464968,      2.938163982698783};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996,
                                3.754408661907416};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_pdf(double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }
}  // namespace

void AnalyticParams::validate() const {
    if (blocks == 0 || samples_per_block == 0)
        throw std::invalid_argument("analytic: blocks and samples per block must be >= 1");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("analytic: alpha must lie in [0, 1)");
    if (!(rho > 0.0)) throw std::invalid_argument("analytic: rho must be > 0");
    if (beta_pi < 0.0 || beta_is < 0.0 || h_ps_abs2 < 0.0)
        throw std::invalid_argument("analytic: gains must be >= 0");
}

double q_func(double x) { return 0.5 * std::erfc(x * sqrt1_2); }

double q_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("q_inv: p must lie in (0, 1)");
    // Q(x) = p <=> x = -Phi^{-1}(p); this form keeps precision for tiny p,
    // where 1 - p would round to 1. Two Newton steps reach double precision.
    double x = -norm_quantile_approx(p);
    for (int i = 0; i < 2; ++i) {
        const double pdf = normal_pdf(x);
        if (pdf == 0.0) break;  // far tail: the rational approximation stands
        const double step = (q_func(x) - p) / pdf;
        if (!std::isfinite(step)) break;
        x += step;
    }
    return x;
}

double analytic_pfa(double lambda, const AnalyticParams& params) {
    const double m = static_cast<double>(params.blocks);
    const double nbar = static_cast<double>(params.samples_per_block);
    const double a = 1.0 - params.alpha;
    const double num = a * (lambda - 1.0) * nbar * m - m;
    const double den = std::sqrt(2.0 * m + (2.0 - params.alpha - lambda) * (2.0 - params.alpha - lambda) * nbar * m);
    return q_func(num / den);
}

double threshold_for_pfa(double target_pfa, const AnalyticParams& params) {
    if (!(target_pfa > 0.0 && target_pfa < 1.0))
        throw std::invalid_argument("threshold_for_pfa: target must lie in (0, 1)");
    const double m = static_cast<double>(params.blocks);
    const double nbar = static_cast<double>(params.samples_per_block);
    const double a = 1.0 - params.alpha;
    const double big_lambda = q_inv(target_pfa);
    const double l2 = big_lambda * big_lambda;
    const double denom = a * a * nbar * m - l2;
    if (!(denom > 0.0))
        throw std::domain_error(
            "threshold_for_pfa: (1-alpha)^2*nbar*M <= Q^{-1}(p)^2, outside the invertible regime");
    const double disc = a * a * a * a * nbar * m + (m - 2.0 * l2) / nbar;
    if (disc < 0.0)
        throw std::domain_error("threshold_for_pfa: negative discriminant, parameters too small");
    return (a * (m - l2) + big_lambda * std::sqrt(disc)) / denom + 1.0;
}

double pmd_upper_bound(double lambda, const AnalyticParams& params) {
    const double gain = params.rho * params.mean_gain();
    const double scale =
        std::sqrt(static_cast<double>(params.blocks) * static_cast<double>(params.samples_per_block));
    return q_func((1.0 + gain - lambda) / std::sqrt(1.0 + 2.0 * gain) * scale);
}

MeanStatisticBounds mean_statistic_bounds(const AnalyticParams& params) {
    const double aperture = static_cast<double>(params.elements) * params.beta_pi * params.beta_is;
    MeanStatisticBounds b;
    b.h1_mean_lower = 1.0 + params.rho * params.h_ps_abs2 + params.rho * aperture;
    b.h0_mean_approx = 1.0 + 1.0 / static_cast<double>(params.samples_per_block);
    b.gap_lower = params.rho * (aperture + params.h_ps_abs2);
    return b;
}

}  // namespace irs_sense
