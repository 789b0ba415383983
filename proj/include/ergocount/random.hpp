#ifndef ERGOCOUNT_RANDOM_HPP
#define ERGOCOUNT_RANDOM_HPP

#include <cstdint>

namespace ergo {

// Splittable counter-derived stream (splitmix64 core, Steele-Lea-Flood /
// Vigna).  A stream is fully determined by (master_seed, stream_index):
// identical pairs reproduce identical draws, distinct indices give
// statistically independent sequences.  Stream assignment is therefore
// scheduler-independent: parallel code derives one stream per work item
// from the item's index, never from thread identity.
class SeededStream {
public:
  SeededStream(uint64_t master_seed, uint64_t stream_index)
      : master_seed_(master_seed),
        stream_index_(stream_index),
        state_(mix64(master_seed + kGolden * (stream_index + 1))) {}

  uint64_t master_seed() const { return master_seed_; }
  uint64_t stream_index() const { return stream_index_; }

  uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, 1, ..., n-1} by rejection (exact, no modulo bias).
  uint64_t below(uint64_t n) {
    uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

private:
  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t master_seed_;
  uint64_t stream_index_;
  uint64_t state_;
};

}  // namespace ergo

#endif
