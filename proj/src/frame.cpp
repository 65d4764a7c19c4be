#include "irs_sense/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace irs_sense {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

void check_inputs(Hypothesis hyp, std::span<const std::complex<double>> g,
                  const FrameLayout& layout, double pt_mw, double noise_mw) {
    if (!(pt_mw > 0.0 && noise_mw > 0.0))
        throw std::invalid_argument("frame: pt and noise power must be > 0");
    if (hyp == Hypothesis::h1 && g.size() != layout.blocks)
        throw std::invalid_argument("frame: h1 needs one effective channel per block");
}

// One frame in block-major order, same draw sequence for both synthesis
// entry points: under h1 each sample draws the symbol phase first, then the
// noise. The sink sees samples in generation order.
template <typename Sink>
void generate_frame(Hypothesis hyp, std::span<const std::complex<double>> g,
                    const FrameLayout& layout, double pt_mw, double noise_mw, RngStream& rng,
                    Sink&& sink) {
    const double symbol_amp = std::sqrt(pt_mw);
    for (std::size_t m = 0; m < layout.blocks; ++m) {
        if (hyp == Hypothesis::h0) {
            for (std::size_t i = 0; i < layout.samples_per_block; ++i)
                sink(m, rng.cgauss(noise_mw));
        } else {
            const std::complex<double> gm = g[m];
            for (std::size_t i = 0; i < layout.samples_per_block; ++i) {
                const double t = two_pi * rng.uniform();
                const std::complex<double> symbol{symbol_amp * std::cos(t),
                                                  symbol_amp * std::sin(t)};
                sink(m, gm * symbol + rng.cgauss(noise_mw));
            }
        }
    }
}

}  // namespace

FrameLayout::FrameLayout(std::size_t blocks_, std::size_t samples_per_block_)
    : blocks(blocks_), samples_per_block(samples_per_block_) {
    if (blocks == 0 || samples_per_block == 0)
        throw std::invalid_argument("frame layout: blocks and samples per block must be >= 1");
}

FrameLayout FrameLayout::from_total(std::size_t total, std::size_t blocks) {
    if (blocks == 0 || total % blocks != 0)
        throw std::invalid_argument("frame layout: total observations must be divisible by blocks");
    return FrameLayout(blocks, total / blocks);
}

BlockEnergies synthesize_block_energies(Hypothesis hyp, std::span<const std::complex<double>> g,
                                        const FrameLayout& layout, double pt_mw, double noise_mw,
                                        RngStream& rng) {
    check_inputs(hyp, g, layout, pt_mw, noise_mw);
    BlockEnergies energies;
    energies.t.assign(layout.blocks, 0.0);
    generate_frame(hyp, g, layout, pt_mw, noise_mw, rng,
                   [&](std::size_t m, std::complex<double> y) { energies.t[m] += std::norm(y); });
    const double scale = static_cast<double>(layout.samples_per_block) * noise_mw;
    for (auto& t : energies.t) t /= scale;
    return energies;
}

std::vector<std::complex<double>> synthesize_raw_frame(Hypothesis hyp,
                                                       std::span<const std::complex<double>> g,
                                                       const FrameLayout& layout, double pt_mw,
                                                       double noise_mw, RngStream& rng) {
    check_inputs(hyp, g, layout, pt_mw, noise_mw);
    std::vector<std::complex<double>> samples;
    samples.reserve(layout.total());
    generate_frame(hyp, g, layout, pt_mw, noise_mw, rng,
                   [&](std::size_t, std::complex<double> y) { samples.push_back(y); });
    return samples;
}

}  // namespace irs_sense
