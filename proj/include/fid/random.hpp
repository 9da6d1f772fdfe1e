#pragma once

#include <cstdint>

namespace fid {

// Seedable PCG32 stream (O'Neill's pcg32_oneseq with a stream selector).
//
// Guarantees relied on throughout the library:
//   - the same (seed, stream) pair reproduces a bit-identical draw sequence,
//   - distinct stream ids select distinct LCG increments and therefore
//     statistically independent sequences.
//
// A RandomSource is owned by one logical thread at a time; parallel Monte
// Carlo derives one source per worker from (seed, stream ^ worker_index).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream), state_(0), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint32_t next_u32() noexcept {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform double in [0,1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
  std::uint64_t inc_;
};

}  // namespace fid
