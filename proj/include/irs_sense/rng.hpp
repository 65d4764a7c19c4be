#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace irs_sense {

/// Purpose tag for deriving independent random substreams. Every sampling
/// site uses its own purpose so that adding draws in one place never shifts
/// the values produced elsewhere.
enum class Draw : std::uint64_t {
    azimuth = 1,
    channel = 2,
    codebook = 3,
    frame = 4,
    gain_law = 5,
};

/// A self-contained random stream. Streams are created from a key tuple
/// (master seed, purpose, indices) via substream(); two streams with
/// different keys are statistically independent, and the values drawn from
/// a stream depend only on its key and the draw order within the stream.
/// This makes every Monte Carlo result a pure function of (config, seed),
/// independent of scheduling or worker count.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_positive() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller. Consumes two 64-bit words every
    /// other call (the sine partner is cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_positive()));
        const double t = 2.0 * pi_ * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    /// Circularly symmetric complex Gaussian CN(0, variance): real and
    /// imaginary parts independent N(0, variance/2). Consumes exactly two
    /// 64-bit words, independent of the normal() cache.
    std::complex<double> cgauss(double variance) {
        const double r = std::sqrt(-variance * std::log(uniform_positive()));
        const double t = 2.0 * pi_ * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

  private:
    static constexpr double pi_ = 3.141592653589793238462643383279502884;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

namespace detail {
// splitmix64 finalizer; good avalanche for key-to-seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Derive the substream for (master_seed, purpose, k1, k2, k3).
inline RngStream substream(std::uint64_t master_seed, Draw purpose, std::uint64_t k1 = 0,
                           std::uint64_t k2 = 0, std::uint64_t k3 = 0) {
    using detail::mix64;
    std::uint64_t s = master_seed;
    s = mix64(s ^ mix64(static_cast<std::uint64_t>(purpose)));
    s = mix64(s ^ mix64(k1));
    s = mix64(s ^ mix64(k2));
    s = mix64(s ^ mix64(k3));
    return RngStream(s);
}

}  // namespace irs_sense
