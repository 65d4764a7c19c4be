#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "irs_sense/detect.hpp"
#include "irs_sense/rng.hpp"
#include "test_support.hpp"

using namespace irs_sense;

TEST_CASE("practical_weights: symmetric blocks share the weight") {
    const auto wv = practical_weights(BlockEnergies{{1.5, 1.5}}, 0.5);
    CHECK(wv.w[0] == doctest::Approx(0.5));
    CHECK(wv.w[1] == doctest::Approx(0.5));
    CHECK(wv.discarded.empty());
}

TEST_CASE("practical_weights: blocks at or below alpha are discarded") {
    const auto wv = practical_weights(BlockEnergies{{2.0, 0.3}}, 0.5);
    CHECK(wv.w[0] == doctest::Approx(1.0));
    CHECK(wv.w[1] == 0.0);
    REQUIRE(wv.discarded.size() == 1);
    CHECK(wv.discarded[0] == 1);
}

TEST_CASE("practical_weights: alpha = 0 is plain normalization") {
    auto rng = substream(60, Draw::frame);
    BlockEnergies t;
    for (int m = 0; m < 32; ++m) t.t.push_back(0.1 + 3.0 * rng.uniform());
    const auto wv = practical_weights(t, 0.0);
    const double sum = std::accumulate(t.t.begin(), t.t.end(), 0.0);
    for (int m = 0; m < 32; ++m) CHECK(wv.w[m] == doctest::Approx(t.t[m] / sum).epsilon(1e-12));
}

TEST_CASE("practical_weights: all-discarded frame keeps zero weights") {
    const auto wv = practical_weights(BlockEnergies{{0.1, 0.2, 0.3}}, 0.5);
    CHECK(wv.all_discarded());
    for (const double w : wv.w) CHECK(w == 0.0);
    CHECK(wv.discarded.size() == 3);
}

TEST_CASE("practical_weights validates alpha") {
    CHECK_THROWS_AS(practical_weights(BlockEnergies{{1.0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(practical_weights(BlockEnergies{{1.0}}, -0.1), std::invalid_argument);
}

TEST_CASE("practical_weights sum to one whenever a block survives") {
    auto rng = substream(61, Draw::frame);
    for (int trial = 0; trial < 200; ++trial) {
        BlockEnergies t;
        for (int m = 0; m < 10; ++m) t.t.push_back(2.0 * rng.uniform());
        const double alpha = 0.9 * rng.uniform();
        const auto wv = practical_weights(t, alpha);
        if (wv.all_discarded()) continue;
        const double sum = std::accumulate(wv.w.begin(), wv.w.end(), 0.0);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        for (const double w : wv.w) CHECK(w >= 0.0);
    }
}

TEST_CASE("genie_weights: equal and one-sided gains") {
    const std::vector<std::complex<double>> equal{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const double w : genie_weights(equal).w) CHECK(w == doctest::Approx(0.25));

    const std::vector<std::complex<double>> onesided{{2, 0}, {0, 0}};
    const auto wv = genie_weights(onesided);
    CHECK(wv.w[0] == doctest::Approx(1.0));
    CHECK(wv.w[1] == 0.0);
    REQUIRE(wv.discarded.size() == 1);
    CHECK(wv.discarded[0] == 1);
}

TEST_CASE("genie_weights are invariant under channel scaling") {
    auto rng = substream(62, Draw::frame);
    std::vector<std::complex<double>> g;
    for (int m = 0; m < 8; ++m) g.push_back(rng.cgauss(1.0));
    const auto base = genie_weights(g);
    const std::complex<double> c{-2.7, 1.3};
    auto scaled = g;
    for (auto& v : scaled) v *= c;
    const auto wv = genie_weights(scaled);
    for (int m = 0; m < 8; ++m) CHECK(wv.w[m] == doctest::Approx(base.w[m]).epsilon(1e-12));
}

TEST_CASE("genie_weights rejects an all-zero channel") {
    const std::vector<std::complex<double>> zeros(4, {0.0, 0.0});
    CHECK_THROWS_AS(genie_weights(zeros), std::invalid_argument);
}

TEST_CASE("wed_statistic: selection and single-block collapse") {
    const BlockEnergies t{{1.1, 2.2, 3.3}};
    WeightVector one_hot{{0.0, 1.0, 0.0}, {0, 2}};
    CHECK(wed_statistic(t, one_hot) == doctest::Approx(2.2));
    const BlockEnergies single{{1.7}};
    CHECK(wed_statistic(single, practical_weights(single, 0.0)) == doctest::Approx(1.7));
}

TEST_CASE("wed_statistic: all-zero weights give 0") {
    const BlockEnergies t{{0.1, 0.2}};
    const auto wv = practical_weights(t, 0.9);
    CHECK(wv.all_discarded());
    CHECK(wed_statistic(t, wv) == 0.0);
    CHECK(decide(wed_statistic(t, wv), 1e-9).decision == Hypothesis::h0);
}

TEST_CASE("wed_statistic rejects mismatched lengths") {
    CHECK_THROWS_AS(wed_statistic(BlockEnergies{{1.0, 2.0}}, WeightVector{{1.0}, {}}),
                    std::invalid_argument);
}

TEST_CASE("wed_statistic agrees with the unrelaxed ratio form when nothing is clipped") {
    auto rng = substream(63, Draw::frame);
    for (int trial = 0; trial < 100; ++trial) {
        const double alpha = 0.8 * rng.uniform();
        BlockEnergies t;
        for (int m = 0; m < 16; ++m) t.t.push_back(alpha + 0.05 + 2.0 * rng.uniform());
        const double stat = wed_statistic(t, practical_weights(t, alpha));
        double num = 0.0, den = 0.0, sq = 0.0;
        for (const double tm : t.t) {
            num += (tm - alpha) * tm;
            den += tm - alpha;
            sq += (tm - alpha) * (tm - alpha);
        }
        CHECK(stat == doctest::Approx(num / den).epsilon(1e-12));
        CHECK(stat == doctest::Approx(sq / den + alpha).epsilon(1e-12));
    }
}

TEST_CASE("wed_statistic at alpha = 0 is the energy-weighted mean") {
    auto rng = substream(64, Draw::frame);
    BlockEnergies t;
    for (int m = 0; m < 20; ++m) t.t.push_back(0.05 + rng.uniform());
    double sq = 0.0, sum = 0.0;
    for (const double tm : t.t) {
        sq += tm * tm;
        sum += tm;
    }
    CHECK(wed_statistic(t, practical_weights(t, 0.0)) == doctest::Approx(sq / sum).epsilon(1e-12));
}

TEST_CASE("wed_statistic with practical weights is permutation invariant") {
    auto rng = substream(65, Draw::frame);
    BlockEnergies t;
    for (int m = 0; m < 12; ++m) t.t.push_back(2.0 * rng.uniform());
    const double base = wed_statistic(t, practical_weights(t, 0.3));
    BlockEnergies shuffled = t;
    std::sort(shuffled.t.begin(), shuffled.t.end());
    CHECK(wed_statistic(shuffled, practical_weights(shuffled, 0.3)) ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("raising the strongest block never lowers the statistic") {
    // The statistic is an energy-weighted mean, so raising a weak block can
    // pull it down; raising the top block cannot. A bump of size d to block
    // j moves the statistic in the direction of 2*t_j - alpha + d - stat.
    auto rng = substream(66, Draw::frame);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = 0.5 * rng.uniform();
        BlockEnergies t;
        for (int m = 0; m < 8; ++m) t.t.push_back(alpha + 0.1 + rng.uniform());
        const double base = wed_statistic(t, practical_weights(t, alpha));
        const double bump = 0.5;

        BlockEnergies top = t;
        const auto k = static_cast<std::size_t>(
            std::max_element(t.t.begin(), t.t.end()) - t.t.begin());
        top.t[k] += bump;
        CHECK(wed_statistic(top, practical_weights(top, alpha)) >= base - 1e-12);

        const auto j = static_cast<std::size_t>(trial % 8);
        BlockEnergies any = t;
        any.t[j] += bump;
        const double moved = wed_statistic(any, practical_weights(any, alpha));
        const double direction = 2.0 * t.t[j] - alpha + bump - base;
        if (direction > 1e-9) CHECK(moved > base);
        if (direction < -1e-9) CHECK(moved < base);
    }
}

TEST_CASE("sc_statistic takes the maximum with first-index ties") {
    CHECK(sc_statistic(BlockEnergies{{1.0, 3.0, 2.0}}) == 3.0);
    CHECK(sc_statistic(BlockEnergies{{2.0, 2.0}}) == 2.0);
    CHECK_THROWS_AS(sc_statistic(BlockEnergies{{}}), std::invalid_argument);
}

TEST_CASE("sc_statistic equals a one-hot weighted statistic") {
    auto rng = substream(67, Draw::frame);
    BlockEnergies t;
    for (int m = 0; m < 9; ++m) t.t.push_back(rng.uniform());
    const auto k = static_cast<std::size_t>(
        std::max_element(t.t.begin(), t.t.end()) - t.t.begin());
    WeightVector one_hot;
    one_hot.w.assign(9, 0.0);
    one_hot.w[k] = 1.0;
    CHECK(sc_statistic(t) == wed_statistic(t, one_hot));
}

TEST_CASE("decide uses a strict threshold") {
    CHECK(decide(1.5, 1.023).decision == Hypothesis::h1);
    CHECK(decide(1.0, 1.023).decision == Hypothesis::h0);
    CHECK(decide(1.023, 1.023).decision == Hypothesis::h0);
    CHECK(decide(1.5, 1.023).statistic == 1.5);
}

TEST_CASE("detector config validation") {
    DetectorConfig cfg;
    cfg.alpha = 0.2;
    cfg.threshold = 1.023;
    CHECK_NOTHROW(cfg.validate());
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.alpha = 0.0;
    cfg.threshold = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
