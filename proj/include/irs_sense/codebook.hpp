#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "irs_sense/channel.hpp"
#include "irs_sense/rng.hpp"

namespace irs_sense {

/// M diagonal unit-modulus reflection states for an L-element surface,
/// stored as phases in [0, 2*pi) (row-major, L rows by M columns). Storing
/// phases rather than complex entries keeps every diagonal entry exactly
/// unit-modulus.
class ReflectionCodebook {
  public:
    ReflectionCodebook() = default;
    ReflectionCodebook(std::size_t elements, std::size_t codewords, std::vector<double> phases);

    std::size_t elements() const { return elements_; }   // L
    std::size_t codewords() const { return codewords_; }  // M

    double phase(std::size_t l, std::size_t m) const { return phases_[l * codewords_ + m]; }
    std::complex<double> reflection(std::size_t l, std::size_t m) const {
        const double t = phase(l, m);
        return {std::cos(t), std::sin(t)};
    }
    std::span<const double> phases() const { return phases_; }

    // Plain text matrix (L rows, M space-separated columns of radians).
    void save(const std::filesystem::path& file) const;
    static ReflectionCodebook load(const std::filesystem::path& file);

  private:
    std::size_t elements_ = 0;
    std::size_t codewords_ = 0;
    std::vector<double> phases_;
};

/// Phases i.i.d. uniform on [0, 2*pi). elements == 0 yields an empty
/// codebook that still has M columns (no-IRS case).
ReflectionCodebook random_codebook(std::size_t elements, std::size_t codewords, RngStream& rng);

/// Single codeword (M = 1) aligning every reflected path with the direct
/// one: theta_l = arg(h_ps) + arg(h_is[l]) - arg(h_pi[l]), so that
/// |g| = |h_ps| + sum_l |h_is[l]| * |h_pi[l]|, the maximum over all states.
/// arg(0) is taken as 0.
ReflectionCodebook optimal_phases(const ChannelRealization& chan);

/// g_m = h_ps + h_is^H * diag(e^{j theta_{.,m}}) * h_pi, one entry per codeword.
std::vector<std::complex<double>> effective_channels(const ChannelRealization& chan,
                                                     const ReflectionCodebook& book);

}  // namespace irs_sense
