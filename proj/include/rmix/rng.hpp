#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rmix {

// Counter-free splittable RNG. Streams are derived from (seed, index) so that
// per-sample substreams give identical results regardless of how the batch is
// chunked over threads. Uniform/normal draws are implemented here instead of
// relying on std::*_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix(seed)) {}

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Independent substream for sample `index` of a stream tagged `tag`.
  static Rng substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    std::uint64_t s = splitmix(seed ^ (0xa0761d6478bd642fULL * (tag + 1)));
    return Rng(s ^ splitmix(0xe7037ed1a0b428dbULL * (index + 1)));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Marsaglia polar method; one spare cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  std::uint64_t uniform_index(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is small against 2^64.
    return next_u64() % n;
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rmix
