#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qg {

// Arbitrary-precision natural number. The kernel never produces negative
// values: subtraction is truncated at zero everywhere.
using Nat = boost::multiprecision::cpp_int;

inline Nat nat_pow2(std::uint64_t k) {
  Nat n = 1;
  return n << k;
}

// floor(log2(x)) for x >= 1, and 0 for x == 0.
inline std::uint64_t floor_log2(const Nat& x) {
  if (x <= 1) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(x));
}

inline bool is_pow2(const Nat& x) { return x >= 1 && (x & (x - 1)) == 0; }

// x - y truncated at zero.
inline Nat sub_trunc(const Nat& x, const Nat& y) { return x <= y ? Nat(0) : Nat(x - y); }

// Deterministic cross-platform PRNG (splitmix64). std::mt19937 plus the
// standard distributions is not byte-stable across library implementations,
// and reproducibility of sampled interpretations is part of the contract.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0, bound); bound > 0. Modulo bias is irrelevant
  // here (bounds are tiny against 2^64) and determinism is what matters.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

std::string nat_to_string(const Nat& n);

}  // namespace qg
