#pragma once

#include <cstdint>

namespace fisim {

// SplitMix64 stream. Chosen over std::mt19937 because its output is fully
// specified here, which keeps campaign artifacts byte-identical across
// platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). n must be > 0; modulo bias is negligible for
  // the small n used here (image coordinates, kernel picks).
  uint32_t uniform_u32(uint32_t n) { return static_cast<uint32_t>(next_u64() % n); }

  double gaussian(double mean, double sigma);

 private:
  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream seed from a parent seed and a stream index.
uint64_t mix_seed(uint64_t parent, uint64_t stream);

}  // namespace fisim
