#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace noisyemo {

/// Philox4x32-10 block function (Salmon et al., counter-based RNG).
/// Exposed for known-answer testing.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// A stream is identified by a 64-bit key (derived from the user seed) and a
/// 64-bit stream id. Output block `i` of a stream is
/// `philox4x32_10({i_lo, i_hi, id_lo, id_hi}, key)`, so any block can be
/// computed without generating the ones before it.
///
/// `split(a, b)` derives a child stream with the same key and the id
/// `mix(id, a, b)` (SplitMix64 finalizer chain). It does not advance the parent,
/// hence children derived from the same parent state are independent of the
/// order in which they are consumed. Optimizers use this to give every
/// offspring of every generation its own stream.
///
/// Normal deviates use the Box-Muller transform on 53-bit uniforms so results
/// do not depend on the standard library's distribution implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1).
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal deviate.
  double normal() noexcept;
  double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }
  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  RandomStream split(std::uint64_t a, std::uint64_t b = 0) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t block_counter() const noexcept { return counter_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint32_t, 2> key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int next_word_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer; used for seed derivation across campaign cells/runs.
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) noexcept;

}  // namespace noisyemo
