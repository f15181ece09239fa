#include "gpc/random.hpp"

namespace gpc {

namespace {

// Philox4x64-10 round constants (Salmon et al., Random123).
constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

std::array<std::uint64_t, 4> philox_block(std::array<std::uint64_t, 4> c,
                                          std::uint64_t k0, std::uint64_t k1) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : key0_(master_seed), key1_(stream_id) {}

void RandomStream::refill() {
  // Pre-increment the 256-bit counter, then encrypt it.
  for (int i = 0; i < 4; ++i) {
    if (++counter_[i] != 0) break;
  }
  block_ = philox_block(counter_, key0_, key1_);
  block_pos_ = 0;
}

std::uint64_t RandomStream::next_u64() {
  if (block_pos_ == 4) refill();
  ++drawn_;
  return block_[block_pos_++];
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * kInv53;
}

double RandomStream::next_open_double() {
  return static_cast<double>((next_u64() >> 11) + 1) * kInv53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // SplitMix64 finalizer over the salted seed.
  std::uint64_t z = seed + (salt + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace gpc
