#pragma once

// Reproducible randomness: one 64-bit seed, per-label substreams.
//
// Substream seed = SplitMix64(seed ^ FNV-1a-64(label)); the stream itself is
// std::mt19937_64, whose output sequence is fixed by the C++ standard.
// Bounded draws use rejection sampling rather than std distributions, which
// are implementation-defined.

#include <cstdint>
#include <random>
#include <string_view>

#include "bigint.hpp"

namespace tricol {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view label) : engine_(splitmix64(seed ^ fnv1a64(label))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [0, bound), bound > 0, for big bounds.
  BigInt below(const BigInt& bound) {
    const auto bits = static_cast<mp_bitcnt_t>(mpz_sizeinbase(bound.get_mpz_t(), 2));
    for (;;) {
      BigInt x = 0;
      for (mp_bitcnt_t have = 0; have < bits; have += 64) {
        mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), 64);
        BigInt chunk;
        const std::uint64_t v = engine_();
        mpz_import(chunk.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
        x += chunk;
      }
      mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), bits);
      if (x < bound) return x;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tricol
