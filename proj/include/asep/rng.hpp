#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace asep {

/// Counter-based Philox4x32-10 generator. A stream is fully determined by
/// (seed, stream id); replicas keyed by their index never share state, so
/// parallel runs are reproducible independently of the thread count.
class Philox {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;

  Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (idx_ >= 4) refill();
    const std::uint64_t hi = buf_[idx_++];
    const std::uint64_t lo = buf_[idx_++];
    return (hi << 32) | lo;
  }

  /// Uniform on (0,1), never returns 0.
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  /// Stateless block evaluation: the keyed hash of a 128-bit counter.
  static Block block(std::uint64_t seed, std::uint64_t c0, std::uint64_t c1) {
    std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    Block ctr{static_cast<std::uint32_t>(c0), static_cast<std::uint32_t>(c0 >> 32), static_cast<std::uint32_t>(c1),
              static_cast<std::uint32_t>(c1 >> 32)};
    return rounds(ctr, key);
  }

  /// Uniform on (0,1) derived from a block, for hash-based fields.
  static double block_uniform(const Block& b) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static Block rounds(Block ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53, kM1 = 0xCD9E8D57;
    constexpr std::uint32_t kW0 = 0x9E3779B9, kW1 = 0xBB67AE85;
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }

  void refill() {
    buf_ = rounds(ctr_, key_);
    if (++ctr_[0] == 0) ++ctr_[1];
    idx_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  Block ctr_;
  Block buf_{};
  int idx_ = 4;
};

}  // namespace asep
