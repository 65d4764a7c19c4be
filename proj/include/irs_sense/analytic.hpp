#pragma once

#include <cstddef>

namespace irs_sense {

/// Everything the closed-form expressions need. rho is the transmit power
/// to noise ratio P_t/sigma^2; the channel side enters only through the
/// mean effective gain L*beta_pi*beta_is + h_ps_abs2.
struct AnalyticParams {
    std::size_t blocks = 100;             // M
    std::size_t samples_per_block = 100;  // nbar
    double alpha = 0.0;
    double rho = 1.0;
    std::size_t elements = 0;  // L
    double beta_pi = 0.0;
    double beta_is = 0.0;
    double h_ps_abs2 = 0.0;

    double mean_gain() const {
        return static_cast<double>(elements) * beta_pi * beta_is + h_ps_abs2;
    }
    void validate() const;
};

/// Standard Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_func(double x);

/// Inverse of q_func on (0, 1); rational approximation polished by Newton
/// steps to full double accuracy.
double q_inv(double p);

/// Closed-form false-alarm probability of the weighted energy detector at
/// threshold lambda:
///   Q( ((1-alpha)(lambda-1)*nbar*M - M) / sqrt(2M + (2-alpha-lambda)^2*nbar*M) ).
double analytic_pfa(double lambda, const AnalyticParams& params);

/// Threshold achieving a target false-alarm probability, the inverse of
/// analytic_pfa. Throws std::domain_error when the parameters are outside
/// the invertible regime ((1-alpha)^2*nbar*M must exceed Q^{-1}(p)^2).
double threshold_for_pfa(double target_pfa, const AnalyticParams& params);

/// Upper bound on the missed-detection probability:
///   Q( (1 + rho*gain - lambda) / sqrt(1 + 2*rho*gain) * sqrt(M*nbar) )
/// with gain = L*beta_pi*beta_is + h_ps_abs2.
double pmd_upper_bound(double lambda, const AnalyticParams& params);

struct MeanStatisticBounds {
    double h1_mean_lower;   // 1 + rho*h_ps_abs2 + rho*L*beta_pi*beta_is
    double h0_mean_approx;  // 1 + 1/nbar
    double gap_lower;       // rho*(L*beta_pi*beta_is + h_ps_abs2)
};

MeanStatisticBounds mean_statistic_bounds(const AnalyticParams& params);

}  // namespace irs_sense
