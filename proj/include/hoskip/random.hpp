#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hoskip {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Stream layout: the 64-bit seed is the key (low word, high word); the
/// counter is (block_lo, block_hi, stream_lo, stream_hi). Each Monte Carlo
/// trial owns stream index == trial index, so a trial's draws depend only on
/// (seed, trial) and never on batching or thread scheduling.
class RandomStream {
 public:
  using result_type = std::uint32_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t hi = (*this)() >> 5;
    const std::uint64_t lo = (*this)() >> 6;
    return (static_cast<double>((hi << 26) | lo) + 0.5) * 0x1.0p-53;
  }

  /// Unit-mean exponential.
  double exponential();

  /// Position of the next block; two streams with equal seed, stream and
  /// position produce identical output.
  std::uint64_t block() const { return block_; }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int pos_ = 4;
};

/// One Philox4x32-10 evaluation; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

}  // namespace hoskip
