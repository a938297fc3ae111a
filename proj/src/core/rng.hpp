#ifndef TOPOTWIN_CORE_RNG_HPP
#define TOPOTWIN_CORE_RNG_HPP

#include <cassert>
#include <cstdint>
#include <random>

#include "core/rational.hpp"

namespace topotwin {

// Deterministic source for everything random in the tool. Bounded draws are
// implemented here rather than with std distributions, whose output is
// implementation-defined; identical seeds must reproduce identical runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n), n >= 1. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    assert(n >= 1);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    assert(lo <= hi);
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // True with probability p (exact rational in [0,1]).
  bool chance(const Rational& p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    // Draw k uniform in [0, den): true iff k < num.
    const BigInt den = denominator(p);
    const BigInt num = numerator(p);
    assert(den <= UINT64_MAX);
    std::uint64_t k = below(den.convert_to<std::uint64_t>());
    return BigInt(k) < num;
  }

  // Derives an independent child stream; used to give each campaign run its
  // own reproducible sequence.
  Rng fork(std::uint64_t salt) {
    std::uint64_t s = next() ^ (salt * 0x9E3779B97F4A7C15ULL);
    return Rng(s);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace topotwin

#endif
