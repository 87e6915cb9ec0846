#pragma once

#include <cstdint>
#include <utility>

namespace pommer {

// splitmix64 stream. Kept deliberately tiny so generator state can live
// inside GameState and serialize as a single integer.
struct Rng {
  uint64_t state = 0x9E3779B97F4A7C15ULL;

  explicit Rng(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Modulo bias is irrelevant at these ranges.
  uint32_t below(uint32_t n) { return n ? static_cast<uint32_t>(next() % n) : 0; }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(T& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(static_cast<uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }
};

// Derives an independent stream from (a, b); used for sub-seeds so parallel
// episodes and board-generation retries never share a generator.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  Rng r(a ^ (b * 0xD1B54A32D192ED03ULL + 0x9E3779B97F4A7C15ULL));
  r.next();
  return r.next();
}

}  // namespace pommer
