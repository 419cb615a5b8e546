#include "pdsim/rng.hpp"

#include "pdsim/math.hpp"

namespace pdsim {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        round_once(ctr, key);
    }
    return ctr;
}

std::uint64_t NormalStream::raw64(std::uint32_t index) {
    const std::uint32_t block_index = index >> 1;
    if (block_index != cache_block_) {
        cache_ = Philox4x32::block({path_lo_, path_hi_, period_, block_index}, key_);
        cache_block_ = block_index;
    }
    const std::uint32_t word = (index & 1u) << 1;
    return (static_cast<std::uint64_t>(cache_[word + 1]) << 32) | cache_[word];
}

double NormalStream::uniform(std::uint32_t index) {
    // Center of the 53-bit lattice keeps the value strictly inside (0,1).
    return (static_cast<double>(raw64(index) >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal(std::uint32_t index) {
    return norm_inv(uniform(index));
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % bound;
}

} // namespace pdsim
