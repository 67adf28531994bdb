#pragma once

#include <cmath>
#include <cstdint>

namespace tripgrade {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std engines because its output
// is pinned by the algorithm, not by the standard library, so generated fixtures
// replay bit-for-bit everywhere. The name is recorded in generated file headers.
class SplitMix64 {
 public:
  static constexpr const char* kAlgorithm = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // [0, n); modulo bias is irrelevant at fixture scale
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // standard normal via Box-Muller; uses only unit() so it replays anywhere
  double gaussian() {
    double u1 = 1.0 - unit();  // (0, 1]
    double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Poisson by inversion; fine for the small lambdas used here
  int poisson(double lambda) {
    double u = unit();
    double p = std::exp(-lambda);
    double cdf = p;
    int k = 0;
    while (u > cdf && k < 1000) {
      ++k;
      p *= lambda / k;
      cdf += p;
    }
    return k;
  }

  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace tripgrade
