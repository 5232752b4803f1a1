#pragma once

#include <cstdint>

namespace gml {

// splitmix64: tiny deterministic generator. Every randomized operation in the
// library is reproducible from a caller-supplied seed, independent of the
// platform's standard-library distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

}  // namespace gml
