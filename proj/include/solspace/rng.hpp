#ifndef SOLSPACE_RNG_HPP
#define SOLSPACE_RNG_HPP

#include <cstdint>
#include <vector>

namespace solspace {

// splitmix64 finalizer: a bijective 64-bit mixer.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-based stream derivation: the seed of item `index` under `master`
// is a pure function of the pair, so any number of workers can draw
// identical per-item streams in any order.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  return mix64(mix64(master) ^ mix64(index ^ 0xa02bdbf7bb3c0a7ull));
}

inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
  return derive_seed(derive_seed(master, a), b);
}

// Small deterministic PRNG (splitmix64 sequence). Not crypto; stable across
// platforms and standard-library versions, unlike <random> distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return mix64(state_++); }

  // Unbiased integer in [0, bound) via rejection sampling.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() { return (next_u64() >> 63) != 0; }

  double unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  // k distinct values from [0, n), in selection order (partial Fisher-Yates).
  std::vector<int> sample_distinct(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(below(static_cast<uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  uint64_t state_;
};

// round-half-to-even, for turning densities into clause counts.
long long round_half_even(double x);

}  // namespace solspace

#endif
