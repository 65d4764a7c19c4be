#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "irs_sense/channel.hpp"
#include "irs_sense/codebook.hpp"
#include "irs_sense/validate.hpp"
#include "test_support.hpp"

using namespace irs_sense;

namespace {
const PathLossModel kModel{};  // 30 dB at 1 m, exponents 2 / 3.5 / 3.5
}

TEST_CASE("path_gain at the reference distance") {
    CHECK(path_gain(1.0, 2.0, kModel) == doctest::Approx(1e-3).epsilon(1e-12));
    // exponent is irrelevant at 1 m
    CHECK(path_gain(1.0, 3.5, kModel) == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("path_gain at 80 m, exponent 3.5") {
    // 1e-3 * 80^-3.5, evaluated with 40-digit arithmetic
    CHECK(path_gain(80.0, 3.5, kModel) ==
          doctest::Approx(2.1836601342771384e-10).epsilon(1e-13));
}

TEST_CASE("path_gain rejects non-positive distances") {
    CHECK_THROWS_AS(path_gain(0.0, 2.0, kModel), std::invalid_argument);
    CHECK_THROWS_AS(path_gain(-3.0, 2.0, kModel), std::invalid_argument);
}

TEST_CASE("path_gain decreases in distance and exponent beyond 1 m") {
    auto rng = substream(11, Draw::channel);
    for (int i = 0; i < 200; ++i) {
        const double d = 1.0 + 99.0 * rng.uniform();
        const double e = 1.5 + 2.5 * rng.uniform();
        CHECK(path_gain(d * 1.3, e, kModel) < path_gain(d, e, kModel));
        CHECK(path_gain(d + 0.5, e + 0.4, kModel) < path_gain(d + 0.5, e, kModel));
    }
}

TEST_CASE("invalid geometry is rejected") {
    auto rng = substream(21, Draw::channel);
    Geometry geom{};
    geom.pu_distance_m = 0.0;
    CHECK_THROWS_AS(sample_channels(geom, kModel, 2, rng), std::invalid_argument);
    geom = Geometry{};
    geom.pu_azimuth_rad = 7.0;  // outside [0, 2*pi)
    CHECK_THROWS_AS(sample_channels(geom, kModel, 2, rng), std::invalid_argument);
    geom = Geometry{};
    geom.sensing_range_m = -1.0;
    CHECK_THROWS_AS(sample_channels(geom, kModel, 2, rng), std::invalid_argument);
}

TEST_CASE("sample_channels: no-IRS degenerate case") {
    Geometry geom{};
    auto rng = substream(12, Draw::channel);
    const auto chan = sample_channels(geom, kModel, 0, rng);
    CHECK(chan.h_pi.empty());
    CHECK(chan.h_is.empty());
    CHECK(std::norm(chan.h_ps) > 0.0);
    CHECK(chan.beta_ps == doctest::Approx(2.1836601342771384e-10).epsilon(1e-13));
}

TEST_CASE("sample_channels: large-scale gains follow the geometry") {
    Geometry geom{};
    geom.pu_azimuth_rad = 1.3;  // the PU stays on the d = 80 m ring
    auto rng = substream(13, Draw::channel);
    const auto chan = sample_channels(geom, kModel, 4, rng);
    CHECK(chan.beta_is == doctest::Approx(1e-3).epsilon(1e-12));
    const double d_pi = std::sqrt(80.0 * 80.0 + 1.0);
    CHECK(chan.beta_pi == doctest::Approx(1e-3 * std::pow(d_pi, -3.5)).epsilon(1e-12));
}

TEST_CASE("sample_channels: |h_ps|^2 averages to beta_ps") {
    Geometry geom{};
    std::vector<double> p(100000);
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto rng = substream(14, Draw::channel, i);
        p[i] = std::norm(sample_channels(geom, kModel, 0, rng).h_ps);
    }
    auto rng0 = substream(14, Draw::channel, 0);
    const double beta_ps = sample_channels(geom, kModel, 0, rng0).beta_ps;
    CHECK(test_support::mean(p) == doctest::Approx(beta_ps).epsilon(0.02));
}

TEST_CASE("sample_channels: LoS link has constant modulus") {
    Geometry geom{};
    auto rng = substream(15, Draw::channel);
    const auto chan = sample_channels(geom, kModel, 37, rng);
    for (const auto& h : chan.h_is)
        CHECK(std::norm(h) == doctest::Approx(chan.beta_is).epsilon(1e-12));
}

TEST_CASE("sample_channels: h_pi second moment matches beta_pi") {
    Geometry geom{};
    auto rng = substream(16, Draw::channel);
    const auto chan = sample_channels(geom, kModel, 50000, rng);
    std::vector<double> p(chan.h_pi.size());
    for (std::size_t l = 0; l < p.size(); ++l) p[l] = std::norm(chan.h_pi[l]);
    CHECK(test_support::mean(p) == doctest::Approx(chan.beta_pi).epsilon(0.03));
}

TEST_CASE("sample_gain_law: central case is exponential with the aperture mean") {
    GainLawParams params{64, 2e-10, 1e-3, 0.0};
    const double expected = 64 * 2e-10 * 1e-3;
    auto rng = substream(17, Draw::gain_law);
    std::vector<double> draws(1000000);
    for (auto& v : draws) v = sample_gain_law(params, rng);
    CHECK(test_support::mean(draws) == doctest::Approx(expected).epsilon(0.01));
    // exponential: variance equals mean^2
    CHECK(test_support::variance(draws) == doctest::Approx(expected * expected).epsilon(0.05));
}

TEST_CASE("sample_gain_law: mean adds the direct-path power") {
    GainLawParams params{128, 3e-10, 1e-3, 5e-10};
    const double expected = 128 * 3e-10 * 1e-3 + 5e-10;
    auto rng = substream(18, Draw::gain_law);
    std::vector<double> draws(1000000);
    for (auto& v : draws) v = sample_gain_law(params, rng);
    CHECK(test_support::mean(draws) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("sample_gain_law rejects an undefined law") {
    auto rng = substream(19, Draw::gain_law);
    CHECK_THROWS_AS(sample_gain_law(GainLawParams{0, 1e-10, 1e-3, 0.0}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_gain_law(GainLawParams{8, 0.0, 1e-3, 0.0}, rng),
                    std::invalid_argument);
}

TEST_CASE("effective gains under random codewords match the reference law (L = 1024)") {
    const auto report = validate_gain_law(1024, 10000, 2024);
    CHECK(report.ks_distance < 0.02);
    CHECK(report.pass);
}

TEST_CASE("empirical mean of |g|^2 approaches L*beta_pi*beta_is + |h_ps|^2") {
    Geometry geom{};
    auto crng = substream(20, Draw::channel);
    const auto chan = sample_channels(geom, kModel, 256, crng);
    auto brng = substream(20, Draw::codebook);
    const auto book = random_codebook(256, 4000, brng);
    const auto g = effective_channels(chan, book);
    std::vector<double> p(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) p[m] = std::norm(g[m]);
    const double expected = 256 * chan.beta_pi * chan.beta_is + std::norm(chan.h_ps);
    CHECK(test_support::mean(p) == doctest::Approx(expected).epsilon(0.06));
}
