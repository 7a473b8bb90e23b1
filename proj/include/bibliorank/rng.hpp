#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bibliorank {

// Deterministic random source. mt19937_64 has a standard-mandated output
// sequence, and every transform below is written out explicitly instead of
// using std::*_distribution (whose algorithms are implementation-defined),
// so a (config, seed) pair produces the same stream on every platform.
// Continuous draws go through exp/log/cos from libm; their last-ulp rounding
// is the only platform-dependent piece and is accepted as such.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return r % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller, one value per call (two uniforms consumed, sine half unused).
  double normal(double mean = 0.0, double sigma = 1.0) {
    double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    double u2 = uniform01();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    return mean + sigma * z;
  }

  // Knuth's product method, chunked so exp() stays in range for any mean.
  long long poisson(double mean) {
    long long total = 0;
    while (mean > 30.0) {
      total += poisson_small(30.0);
      mean -= 30.0;
    }
    return total + poisson_small(mean);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  long long poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    double limit = std::exp(-mean);
    long long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  std::mt19937_64 gen_;
};

}  // namespace bibliorank
