#include "irs_sense/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "irs_sense/units.hpp"

namespace irs_sense {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
}

double distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Vec3 Geometry::pu_pos() const {
    return {su_pos.x + pu_distance_m * std::sin(pu_azimuth_rad),
            su_pos.y + pu_distance_m * std::cos(pu_azimuth_rad), su_pos.z};
}

void Geometry::validate() const {
    if (!(pu_distance_m > 0.0)) throw std::invalid_argument("geometry: pu_distance must be > 0");
    if (!(sensing_range_m > 0.0)) throw std::invalid_argument("geometry: sensing_range must be > 0");
    if (!(pu_azimuth_rad >= 0.0 && pu_azimuth_rad < two_pi))
        throw std::invalid_argument("geometry: azimuth must lie in [0, 2*pi)");
}

void PathLossModel::validate() const {
    if (!(ref_loss_db > 0.0)) throw std::invalid_argument("path loss: ref_loss_db must be > 0");
    if (!(exp_is > 0.0 && exp_ps > 0.0 && exp_pi > 0.0))
        throw std::invalid_argument("path loss: exponents must be > 0");
}

double path_gain(double distance_m, double exponent, const PathLossModel& model) {
    if (!(distance_m > 0.0)) throw std::invalid_argument("path_gain: distance must be > 0");
    return db_to_linear(-model.ref_loss_db) * std::pow(distance_m, -exponent);
}

namespace {

// Far-field steering vector of a half-wavelength URA parallel to the x-y
// plane, toward the unit direction u. Elements fill a ceil(sqrt(L)) x
// ceil(L/cols) grid row-major; the common phase reference is arbitrary.
std::vector<std::complex<double>> ura_steering(std::size_t elements, double ux, double uy) {
    std::vector<std::complex<double>> v(elements);
    if (elements == 0) return v;
    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(elements))));
    constexpr double pi = 3.141592653589793238462643383279502884;
    for (std::size_t l = 0; l < elements; ++l) {
        const double ix = static_cast<double>(l % cols);
        const double iy = static_cast<double>(l / cols);
        const double phase = pi * (ix * ux + iy * uy);  // half-wavelength spacing
        v[l] = {std::cos(phase), std::sin(phase)};
    }
    return v;
}

}  // namespace

ChannelRealization sample_channels(const Geometry& geom, const PathLossModel& model,
                                   std::size_t elements, RngStream& rng) {
    geom.validate();
    model.validate();

    ChannelRealization chan;
    const double d_ps = geom.pu_distance_m;
    const double d_pi = distance(geom.pu_pos(), geom.irs_center);
    const double d_is = distance(geom.irs_center, geom.su_pos);

    chan.beta_ps = path_gain(d_ps, model.exp_ps, model);
    chan.beta_pi = path_gain(d_pi, model.exp_pi, model);
    chan.beta_is = path_gain(d_is, model.exp_is, model);

    chan.h_ps = rng.cgauss(chan.beta_ps);

    chan.h_pi.resize(elements);
    for (auto& h : chan.h_pi) h = rng.cgauss(chan.beta_pi);

    const double ux = (geom.su_pos.x - geom.irs_center.x) / d_is;
    const double uy = (geom.su_pos.y - geom.irs_center.y) / d_is;
    chan.h_is = ura_steering(elements, ux, uy);
    const double amp = std::sqrt(chan.beta_is);
    for (auto& h : chan.h_is) h *= amp;

    return chan;
}

GainLawParams GainLawParams::from(const ChannelRealization& chan) {
    return {chan.elements(), chan.beta_pi, chan.beta_is, std::norm(chan.h_ps)};
}

double sample_gain_law(const GainLawParams& params, RngStream& rng) {
    if (params.elements == 0)
        throw std::invalid_argument("sample_gain_law: law is undefined for L = 0");
    const double sigma2 = static_cast<double>(params.elements) * params.beta_pi * params.beta_is;
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("sample_gain_law: beta_pi * beta_is must be > 0");
    // |g|^2 with g = sqrt(h_ps_abs2) + CN(0, sigma2): the scaled noncentral
    // chi-square (2 dof) with mean sigma2 + h_ps_abs2.
    const std::complex<double> g = std::sqrt(params.h_ps_abs2) + rng.cgauss(sigma2);
    return std::norm(g);
}

}  // namespace irs_sense
