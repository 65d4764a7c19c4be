#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "irs_sense/rng.hpp"

namespace irs_sense {

enum class Hypothesis { h0, h1 };

/// N total observations split into M blocks of nbar = N/M each; one
/// reflection state is held per block.
struct FrameLayout {
    FrameLayout(std::size_t blocks, std::size_t samples_per_block);
    static FrameLayout from_total(std::size_t total, std::size_t blocks);

    std::size_t blocks;             // M
    std::size_t samples_per_block;  // nbar
    std::size_t total() const { return blocks * samples_per_block; }
};

/// Noise-normalized average received power per block:
/// t[m] = (1/(nbar*sigma^2)) * sum_i |y_m[i]|^2.
struct BlockEnergies {
    std::vector<double> t;

    std::size_t blocks() const { return t.size(); }
};

/// Generate one frame and reduce it to block energies.
/// Under h0 each observation is CN(0, noise_mw); under h1 it is
/// g[m]*s + CN(0, noise_mw) with s a constant-modulus symbol of power pt_mw
/// and i.i.d. uniform phase. Per-sample draw order under h1 is symbol phase
/// first, then noise, so that synthesize_raw_frame on an equal substream
/// produces the identical sample sequence.
BlockEnergies synthesize_block_energies(Hypothesis hyp, std::span<const std::complex<double>> g,
                                        const FrameLayout& layout, double pt_mw, double noise_mw,
                                        RngStream& rng);

/// Per-sample variant of the same synthesis (block-major order). Reducing
/// the result block-wise reproduces synthesize_block_energies bit for bit
/// when both are fed the same substream.
std::vector<std::complex<double>> synthesize_raw_frame(Hypothesis hyp,
                                                       std::span<const std::complex<double>> g,
                                                       const FrameLayout& layout, double pt_mw,
                                                       double noise_mw, RngStream& rng);

}  // namespace irs_sense
