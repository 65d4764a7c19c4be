#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "irs_sense/rng.hpp"

namespace irs_sense {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// Node placement. The SU sits at the origin by default, the IRS center
/// 1 m above it, and the PU on a circle of radius pu_distance_m around the
/// SU at azimuth pu_azimuth_rad.
struct Geometry {
    Vec3 su_pos{0.0, 0.0, 0.0};
    Vec3 irs_center{0.0, 0.0, 1.0};
    double pu_distance_m = 80.0;
    double pu_azimuth_rad = 0.0;
    double sensing_range_m = 80.0;

    Vec3 pu_pos() const;
    void validate() const;
};

/// beta = 10^(-ref_loss_db/10) * distance^(-exponent), per-link exponents.
struct PathLossModel {
    double ref_loss_db = 30.0;  // at 1 m
    double exp_is = 2.0;
    double exp_ps = 3.5;
    double exp_pi = 3.5;

    void validate() const;
};

double path_gain(double distance_m, double exponent, const PathLossModel& model);

/// One draw of the three links, constant over a detection frame.
/// h_is stores the IRS->SU column vector; its conjugate transpose is formed
/// where the effective channel is assembled.
struct ChannelRealization {
    std::complex<double> h_ps;
    std::vector<std::complex<double>> h_pi;  // L entries, i.i.d. CN(0, beta_pi)
    std::vector<std::complex<double>> h_is;  // L entries, |.|^2 == beta_is (LoS)
    double beta_ps = 0.0;
    double beta_pi = 0.0;
    double beta_is = 0.0;

    std::size_t elements() const { return h_pi.size(); }
};

/// Draw h_ps (Rayleigh), h_pi (Rayleigh, i.i.d.), and the deterministic LoS
/// h_is for the given geometry. Draw order: h_ps first, then h_pi[0..L-1].
ChannelRealization sample_channels(const Geometry& geom, const PathLossModel& model,
                                   std::size_t elements, RngStream& rng);

/// Parameters of the large-L reference law for the effective channel gain
/// |g|^2 under a random codeword: a noncentral chi-square with 2 degrees of
/// freedom, scale L*beta_pi*beta_is/2 and noncentrality
/// 2*h_ps_abs2/(L*beta_pi*beta_is). Its mean is L*beta_pi*beta_is + h_ps_abs2.
struct GainLawParams {
    std::size_t elements = 0;  // L
    double beta_pi = 0.0;
    double beta_is = 0.0;
    double h_ps_abs2 = 0.0;

    static GainLawParams from(const ChannelRealization& chan);
};

/// One draw of |g|^2 from the reference law.
double sample_gain_law(const GainLawParams& params, RngStream& rng);

}  // namespace irs_sense
