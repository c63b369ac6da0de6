#pragma once

#include <cmath>
#include <cstdint>

namespace metarl {

// Counter-free deterministic RNG built on splitmix64. The standard library
// distributions are implementation-defined, so sampling goes through this
// class to keep runs reproducible across toolchains.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; one spare kept per stream.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

  // Independent substream; deterministic in (parent seed, k) and unaffected
  // by how much the parent has been consumed since construction.
  RngStream child(uint64_t k) const {
    uint64_t z = seed_fingerprint_ ^ (0x9e3779b97f4a7c15ULL * (k + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return RngStream(z ^ (z >> 31));
  }

 private:
  uint64_t state_;
  uint64_t seed_fingerprint_ = state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace metarl
