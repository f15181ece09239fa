// Counter-based random number streams used by all samplers.
//
// Each stream is a Philox4x64-10 generator keyed on (master_seed, stream_id).
// Distinct stream ids select unrelated permutations of the counter space, so
// streams are independent by construction and a replicate can be simulated on
// any worker thread without coordination. Draw sequences depend only on the
// key and the number of values consumed.

#pragma once

#include <array>
#include <cstdint>

namespace gpc {

class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double next_double();
  // Uniform on (0, 1]; safe to pass through log().
  double next_open_double();

  std::uint64_t master_seed() const { return key0_; }
  std::uint64_t stream_id() const { return key1_; }
  // Number of 64-bit values drawn so far.
  std::uint64_t position() const { return drawn_; }

 private:
  friend double standard_normal(RandomStream&);

  void refill();

  std::uint64_t key0_;
  std::uint64_t key1_;
  std::array<std::uint64_t, 4> counter_{};
  std::array<std::uint64_t, 4> block_{};
  int block_pos_ = 4;
  std::uint64_t drawn_ = 0;

  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// SplitMix64 step; used to derive per-dataset or per-run seeds from one
// master seed without correlating the resulting streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Stream-id namespaces. Simulation streams use the bare replicate index;
// other consumers tag the high bits so they never collide with replicates.
inline constexpr std::uint64_t kBootstrapStreamTag = 0x4000'0000'0000'0000ull;
inline constexpr std::uint64_t kDataGenStreamTag = 0x8000'0000'0000'0000ull;

}  // namespace gpc
