#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pdsim {

// Philox 4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
// each 128-bit counter / 64-bit key pair maps to four independent 32-bit
// words, which is what makes path-parallel Monte Carlo deterministic.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);
};

// Random-access stream of uniforms/normals for one (seed, path, period) cell.
// Draw i is a pure function of (seed, path, period, i), so scenario runs that
// share a seed see identical shocks per node slot regardless of which other
// nodes are still alive.
class NormalStream {
  public:
    NormalStream(std::uint64_t seed, std::uint64_t path, std::uint32_t period)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_lo_(static_cast<std::uint32_t>(path)), path_hi_(static_cast<std::uint32_t>(path >> 32)),
          period_(period) {}

    // Uniform draw in (0,1), never exactly 0 or 1.
    double uniform(std::uint32_t index);

    // Standard normal via the inverse CDF.
    double normal(std::uint32_t index);

  private:
    std::uint64_t raw64(std::uint32_t index);

    std::array<std::uint32_t, 2> key_;
    std::uint32_t path_lo_, path_hi_, period_;
    std::array<std::uint32_t, 4> cache_{};
    std::uint32_t cache_block_ = std::numeric_limits<std::uint32_t>::max();
};

// Small splittable generator for utility randomness (network construction,
// sub-seed derivation). Not used on the Monte Carlo hot path.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bound > 0.
    std::uint64_t next_below(std::uint64_t bound);

  private:
    std::uint64_t state_;
};

// Stable derivation of per-member sub-seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0xD6E8FEB86659FD93ULL * (index + 1)));
    return g.next();
}

} // namespace pdsim
