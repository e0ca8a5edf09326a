#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qg/nat.hpp"

namespace qg::sem {

// One concrete "walk among the powers of 2": an injective finite assignment
// from powers of 2 to powers of 2 excluding 1. Keys and images are stored as
// exponents. The orbit of 1 is closed out to max_exponent steps so that
// iterated applications (the E_j walks) stay inside the domain.
class ThetaInterpretation {
 public:
  ThetaInterpretation() = default;
  ThetaInterpretation(std::uint64_t seed, std::map<std::uint64_t, std::uint64_t> assignment);

  // Image of 2^k, as an exponent; nullopt when 2^k has no assigned image.
  std::optional<std::uint64_t> image_exponent(std::uint64_t key_exponent) const;

  bool has_key(std::uint64_t key_exponent) const;
  std::uint64_t seed() const { return seed_; }
  std::uint64_t domain_bound() const { return domain_bound_; }
  const std::map<std::uint64_t, std::uint64_t>& assignment() const { return assignment_; }

  // Checks the Up-Walking constraints on the stored assignment: images are
  // powers of 2 (by exponent representation), never 1, and the map is
  // injective.
  bool valid() const;

  // "exponent -> exponent" pair list, one per line, reproducible fixture
  // format.
  std::string serialize() const;
  static ThetaInterpretation deserialize(const std::string& text, std::uint64_t seed = 0);

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t domain_bound_ = 0;
  std::map<std::uint64_t, std::uint64_t> assignment_;
};

// Deterministic-in-seed sampler. Keys 2^0 .. 2^max_exponent all get images;
// the orbit of 1 is then extended so that theta^j(1) is defined for
// j <= max_exponent. Image exponents are drawn from [1, 4*max_exponent].
ThetaInterpretation sample_theta(std::uint64_t seed, std::uint64_t max_exponent);

// The canonical doubling walk theta(x) = 2x on powers of 2.
ThetaInterpretation doubling_theta(std::uint64_t max_exponent);

// Pigeon-hole function interpretation: an injective finite map on the
// naturals with 0 excluded from the image. Only the orbit of 0 is sampled
// (that is all the zeta terms ever evaluate).
class ZetaInterpretation {
 public:
  ZetaInterpretation() = default;
  ZetaInterpretation(std::uint64_t seed, std::map<Nat, Nat> assignment);

  std::optional<Nat> image(const Nat& key) const;
  std::uint64_t seed() const { return seed_; }
  const std::map<Nat, Nat>& assignment() const { return assignment_; }
  bool valid() const;  // no 0 in image, injective

 private:
  std::uint64_t seed_ = 0;
  std::map<Nat, Nat> assignment_;
};

ZetaInterpretation sample_zeta(std::uint64_t seed, std::uint64_t orbit_length);

}  // namespace qg::sem
