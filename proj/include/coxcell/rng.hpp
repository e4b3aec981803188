#pragma once

#include <cmath>
#include <cstdint>

namespace coxcell {

/// Counter-based Philox-4x32-10 generator.
///
/// Streams are addressed by (key, stream): the same pair always produces the
/// same sequence, independent of any other stream. Monte Carlo trial t of a
/// run with master seed s uses Philox(s, t), so any trial is reproducible in
/// isolation and results do not depend on how trials are scheduled across
/// threads.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox(std::uint64_t key, std::uint64_t stream)
      : key0_(static_cast<std::uint32_t>(key)),
        key1_(static_cast<std::uint32_t>(key >> 32)) {
    ctr_[0] = 0;
    ctr_[1] = 0;
    ctr_[2] = static_cast<std::uint32_t>(stream);
    ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (idx_ == 0) {
      block();
      idx_ = 2;
    }
    return out_[--idx_];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Exponential with mean one (Rayleigh fading power).
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  void block() {
    std::uint32_t x0 = ctr_[0], x1 = ctr_[1], x2 = ctr_[2], x3 = ctr_[3];
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ull * x0;
      const std::uint64_t p1 = 0xCD9E8D57ull * x2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      x0 = hi1 ^ x1 ^ k0;
      x1 = lo1;
      x2 = hi0 ^ x3 ^ k1;
      x3 = lo0;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    out_[0] = (static_cast<std::uint64_t>(x0) << 32) | x1;
    out_[1] = (static_cast<std::uint64_t>(x2) << 32) | x3;
    if (++ctr_[0] == 0) ++ctr_[1];  // 64-bit block counter
  }

  std::uint32_t ctr_[4];
  std::uint32_t key0_, key1_;
  std::uint64_t out_[2] = {0, 0};
  int idx_ = 0;
};

/// Deterministic seed derivation for named sub-experiments (splitmix64 mix).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + tag * 0x9E3779B97F4A7C15ull + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace coxcell
