#include "qg/interp.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace qg::sem {

ThetaInterpretation::ThetaInterpretation(std::uint64_t seed,
                                         std::map<std::uint64_t, std::uint64_t> assignment)
    : seed_(seed), assignment_(std::move(assignment)) {
  domain_bound_ = assignment_.empty() ? 0 : assignment_.rbegin()->first;
}

std::optional<std::uint64_t> ThetaInterpretation::image_exponent(std::uint64_t k) const {
  auto it = assignment_.find(k);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

bool ThetaInterpretation::has_key(std::uint64_t k) const { return assignment_.count(k) != 0; }

bool ThetaInterpretation::valid() const {
  std::set<std::uint64_t> images;
  for (const auto& [k, v] : assignment_) {
    if (v == 0) return false;  // image 2^0 = 1 is forbidden
    if (!images.insert(v).second) return false;
  }
  return true;
}

std::string ThetaInterpretation::serialize() const {
  std::string out;
  for (const auto& [k, v] : assignment_)
    out += std::to_string(k) + " -> " + std::to_string(v) + "\n";
  return out;
}

ThetaInterpretation ThetaInterpretation::deserialize(const std::string& text, std::uint64_t seed) {
  std::map<std::uint64_t, std::uint64_t> m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t k, v;
    std::string arrow;
    if (!(ls >> k >> arrow >> v) || arrow != "->")
      throw std::invalid_argument("theta fixture: bad line '" + line + "'");
    m[k] = v;
  }
  return ThetaInterpretation(seed, std::move(m));
}

ThetaInterpretation sample_theta(std::uint64_t seed, std::uint64_t max_exponent) {
  if (max_exponent < 1) max_exponent = 1;
  SplitMix64 rng(seed ^ 0x51ed270b0f2bull);
  const std::uint64_t hi = 4 * max_exponent;  // image exponents live in [1, hi]
  std::set<std::uint64_t> used;
  std::map<std::uint64_t, std::uint64_t> m;

  auto draw_unused = [&]() {
    // hi >= max_exponent + 1 + orbit needs, so an unused exponent exists.
    while (true) {
      std::uint64_t e = 1 + rng.below(hi);
      if (used.insert(e).second) return e;
    }
  };

  for (std::uint64_t k = 0; k <= max_exponent; ++k) m[k] = draw_unused();

  // Close the orbit of 1 so theta^j(1) is defined for j <= max_exponent.
  std::uint64_t cur = m[0];
  for (std::uint64_t step = 1; step < max_exponent; ++step) {
    auto it = m.find(cur);
    if (it != m.end()) {
      cur = it->second;
      continue;
    }
    std::uint64_t img = draw_unused();
    m[cur] = img;
    cur = img;
  }
  return ThetaInterpretation(seed, std::move(m));
}

ThetaInterpretation doubling_theta(std::uint64_t max_exponent) {
  std::map<std::uint64_t, std::uint64_t> m;
  for (std::uint64_t k = 0; k <= max_exponent; ++k) m[k] = k + 1;
  return ThetaInterpretation(0, std::move(m));
}

ZetaInterpretation::ZetaInterpretation(std::uint64_t seed, std::map<Nat, Nat> assignment)
    : seed_(seed), assignment_(std::move(assignment)) {}

std::optional<Nat> ZetaInterpretation::image(const Nat& key) const {
  auto it = assignment_.find(key);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

bool ZetaInterpretation::valid() const {
  std::set<Nat> images;
  for (const auto& [k, v] : assignment_) {
    if (v == 0) return false;
    if (!images.insert(v).second) return false;
  }
  return true;
}

ZetaInterpretation sample_zeta(std::uint64_t seed, std::uint64_t orbit_length) {
  if (orbit_length < 1) orbit_length = 1;
  SplitMix64 rng(seed ^ 0x2e7a11c3d9ull);
  std::set<std::uint64_t> used;
  std::map<Nat, Nat> m;
  Nat cur = 0;
  for (std::uint64_t i = 0; i < orbit_length; ++i) {
    std::uint64_t v;
    do {
      v = 1 + rng.below(4 * orbit_length);
    } while (!used.insert(v).second);
    m[cur] = Nat(v);
    cur = Nat(v);
  }
  return ZetaInterpretation(seed, std::move(m));
}

}  // namespace qg::sem
