#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "irs_sense/codebook.hpp"
#include "test_support.hpp"

using namespace irs_sense;

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

ChannelRealization make_channel(std::complex<double> h_ps,
                                std::vector<std::complex<double>> h_pi,
                                std::vector<std::complex<double>> h_is) {
    ChannelRealization chan;
    chan.h_ps = h_ps;
    chan.h_pi = std::move(h_pi);
    chan.h_is = std::move(h_is);
    return chan;
}

// element-by-element evaluation of g_m, kept deliberately naive
std::complex<double> naive_effective(const ChannelRealization& chan, const ReflectionCodebook& book,
                                     std::size_t m) {
    std::complex<double> acc = chan.h_ps;
    for (std::size_t l = 0; l < chan.elements(); ++l) {
        const std::complex<double> sigma{std::cos(book.phase(l, m)), std::sin(book.phase(l, m))};
        acc += std::conj(chan.h_is[l]) * sigma * chan.h_pi[l];
    }
    return acc;
}
}  // namespace

TEST_CASE("random_codebook: shape and range") {
    auto rng = substream(30, Draw::codebook);
    const auto book = random_codebook(2, 3, rng);
    CHECK(book.elements() == 2);
    CHECK(book.codewords() == 3);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t m = 0; m < 3; ++m) {
            CHECK(book.phase(l, m) >= 0.0);
            CHECK(book.phase(l, m) < two_pi);
            CHECK(std::abs(book.reflection(l, m)) == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("random_codebook: empty surface keeps its codeword count") {
    auto rng = substream(31, Draw::codebook);
    const auto book = random_codebook(0, 5, rng);
    CHECK(book.elements() == 0);
    CHECK(book.codewords() == 5);
    CHECK_THROWS_AS(random_codebook(4, 0, rng), std::invalid_argument);
}

TEST_CASE("random_codebook: uniform phases have vanishing circular mean") {
    auto rng = substream(32, Draw::codebook);
    const auto book = random_codebook(1000, 1000, rng);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t l = 0; l < 1000; ++l)
        for (std::size_t m = 0; m < 1000; ++m) acc += book.reflection(l, m);
    CHECK(std::abs(acc) / 1e6 < 0.01);
}

TEST_CASE("optimal_phases aligns a single element") {
    // h_ps = 1, h_is^H = 1, h_pi = j  ->  theta* = -pi/2 (stored as 3*pi/2), g = 2
    const auto chan = make_channel({1.0, 0.0}, {{0.0, 1.0}}, {{1.0, 0.0}});
    const auto book = optimal_phases(chan);
    CHECK(book.codewords() == 1);
    CHECK(book.phase(0, 0) == doctest::Approx(1.5 * 3.141592653589793).epsilon(1e-12));
    const auto g = effective_channels(chan, book);
    CHECK(g[0].real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(g[0].imag()) < 1e-12);
}

TEST_CASE("optimal_phases: already-aligned channels need no shift") {
    const auto chan = make_channel({0.5, 0.0}, {{2.0, 0.0}, {1.5, 0.0}}, {{1.0, 0.0}, {3.0, 0.0}});
    const auto book = optimal_phases(chan);
    for (std::size_t l = 0; l < 2; ++l) CHECK(book.phase(l, 0) == doctest::Approx(0.0));
}

TEST_CASE("optimal_phases beats 1000 random configurations") {
    auto crng = substream(33, Draw::channel);
    ChannelRealization chan;
    chan.h_ps = crng.cgauss(1.0);
    for (int l = 0; l < 8; ++l) {
        chan.h_pi.push_back(crng.cgauss(0.5));
        chan.h_is.push_back(crng.cgauss(2.0));
    }
    const auto best = std::abs(effective_channels(chan, optimal_phases(chan))[0]);
    auto brng = substream(33, Draw::codebook);
    const auto book = random_codebook(8, 1000, brng);
    for (const auto& g : effective_channels(chan, book)) CHECK(std::abs(g) <= best * (1 + 1e-12));
    // closed-form coherent sum
    double coherent = std::abs(chan.h_ps);
    for (int l = 0; l < 8; ++l) coherent += std::abs(chan.h_is[l]) * std::abs(chan.h_pi[l]);
    CHECK(best == doctest::Approx(coherent).epsilon(1e-12));
}

TEST_CASE("optimal_phases handles a zero direct path") {
    const auto chan = make_channel({0.0, 0.0}, {{0.0, 2.0}}, {{1.0, 0.0}});
    const auto book = optimal_phases(chan);
    const auto g = effective_channels(chan, book);
    CHECK(std::abs(g[0]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(optimal_phases(make_channel({1.0, 0.0}, {}, {})), std::invalid_argument);
}

TEST_CASE("effective_channels: no-IRS case returns the direct channel") {
    const auto chan = make_channel({0.3, -0.7}, {}, {});
    auto rng = substream(34, Draw::codebook);
    const auto g = effective_channels(chan, random_codebook(0, 4, rng));
    REQUIRE(g.size() == 4);
    for (const auto& gm : g) CHECK(gm == std::complex<double>{0.3, -0.7});
}

TEST_CASE("effective_channels: direct substitution") {
    // h_ps = 0, theta = 0, h_is^H = 1, h_pi = j  ->  g = j
    const auto chan = make_channel({0.0, 0.0}, {{0.0, 1.0}}, {{1.0, 0.0}});
    const ReflectionCodebook book(1, 1, {0.0});
    const auto g = effective_channels(chan, book);
    CHECK(std::abs(g[0] - std::complex<double>{0.0, 1.0}) < 1e-15);
}

TEST_CASE("effective_channels matches the naive element loop") {
    auto crng = substream(35, Draw::channel);
    ChannelRealization chan;
    chan.h_ps = crng.cgauss(1.0);
    for (int l = 0; l < 8; ++l) {
        chan.h_pi.push_back(crng.cgauss(1.0));
        chan.h_is.push_back(crng.cgauss(1.0));
    }
    auto brng = substream(35, Draw::codebook);
    const auto book = random_codebook(8, 4, brng);
    const auto g = effective_channels(chan, book);
    for (std::size_t m = 0; m < 4; ++m)
        CHECK(std::abs(g[m] - naive_effective(chan, book, m)) < 1e-14);
}

TEST_CASE("effective_channels rejects mismatched dimensions") {
    const auto chan = make_channel({1.0, 0.0}, {{1.0, 0.0}}, {{1.0, 0.0}});
    auto rng = substream(36, Draw::codebook);
    CHECK_THROWS_AS(effective_channels(chan, random_codebook(2, 3, rng)), std::invalid_argument);
}

TEST_CASE("effective_channels is linear in each channel for fixed phases") {
    auto crng = substream(39, Draw::channel);
    ChannelRealization chan;
    chan.h_ps = crng.cgauss(1.0);
    for (int l = 0; l < 6; ++l) {
        chan.h_pi.push_back(crng.cgauss(1.0));
        chan.h_is.push_back(crng.cgauss(1.0));
    }
    auto brng = substream(39, Draw::codebook);
    const auto book = random_codebook(6, 3, brng);
    const auto base = effective_channels(chan, book);

    ChannelRealization shifted = chan;
    const std::complex<double> delta{0.3, -0.8};
    shifted.h_ps += delta;
    const auto g_shift = effective_channels(shifted, book);
    for (std::size_t m = 0; m < 3; ++m) CHECK(std::abs(g_shift[m] - base[m] - delta) < 1e-14);

    ChannelRealization scaled = chan;
    scaled.h_ps = 0.0;
    const std::complex<double> c{-1.2, 0.7};
    for (auto& h : scaled.h_pi) h *= c;
    ChannelRealization unscaled = chan;
    unscaled.h_ps = 0.0;
    const auto g_scaled = effective_channels(scaled, book);
    const auto g_unscaled = effective_channels(unscaled, book);
    for (std::size_t m = 0; m < 3; ++m)
        CHECK(std::abs(g_scaled[m] - c * g_unscaled[m]) < 1e-14);
}

TEST_CASE("triangle inequality bounds every codeword's gain") {
    auto crng = substream(37, Draw::channel);
    ChannelRealization chan;
    chan.h_ps = crng.cgauss(1.0);
    for (int l = 0; l < 16; ++l) {
        chan.h_pi.push_back(crng.cgauss(1.0));
        chan.h_is.push_back(crng.cgauss(1.0));
    }
    double bound = std::abs(chan.h_ps);
    for (int l = 0; l < 16; ++l) bound += std::abs(chan.h_is[l]) * std::abs(chan.h_pi[l]);
    auto brng = substream(37, Draw::codebook);
    for (const auto& g : effective_channels(chan, random_codebook(16, 500, brng)))
        CHECK(std::abs(g) <= bound * (1 + 1e-12));
}

TEST_CASE("codebook text round trip") {
    auto rng = substream(38, Draw::codebook);
    const auto book = random_codebook(5, 7, rng);
    const auto file = std::filesystem::temp_directory_path() / "irs_sense_codebook_test.txt";
    book.save(file);
    const auto loaded = ReflectionCodebook::load(file);
    std::filesystem::remove(file);
    REQUIRE(loaded.elements() == 5);
    REQUIRE(loaded.codewords() == 7);
    for (std::size_t l = 0; l < 5; ++l)
        for (std::size_t m = 0; m < 7; ++m) CHECK(loaded.phase(l, m) == book.phase(l, m));
}
