#pragma once

#include <memory>
#include <optional>

#include "qg/eval.hpp"
#include "qg/nat.hpp"
#include "qg/term.hpp"

namespace qg::enc {

// symbol_count counts function and constant symbol occurrences only;
// byte_count is the length of the byte-style encoding; node_count applies to
// Dag terms.
struct LengthReport {
  Nat n;
  std::uint64_t symbol_count = 0;
  std::uint64_t byte_count = 0;
  std::uint64_t node_count = 0;
};

// The canonical observable term for 2^j: the maximum of the j-step walk of
// theta from 1, divided by its j-fold halving. E_0 is the constant C1.
term::TermP build_E(std::uint64_t j);

// The walk maximum Max[theta^j(1), ..., theta(1)] (j >= 2 right-nested;
// j = 1 degenerates to Max applied to theta(1) twice, Max being binary).
term::TermP walk_max(std::uint64_t j);

// Tree term T_n: E_M for the least power of 2 above n minus the E_k of the
// missing bit positions, most significant first.
term::TermP build_tree_term(const Nat& n);

// Dag term G_n with the five staged node groups (constants, theta walk A_j,
// running maxima B_j, halvings D_j, powers E_j) and the final subtraction
// chain.
std::shared_ptr<const term::DagTerm> build_dag_term(const Nat& n);

// S_n = Max[z(0), z^2(0), ..., z^n(0)] with the unary Q-symbol read as the
// pigeon-hole function; S_1 is Max applied to the single term twice.
term::TermP build_zeta_term(std::uint64_t n);

// Canonical numeral: C0/C1/C2 for 0..2, the tree term for mid-sized values,
// and a Dag-backed numeral once the tree form would be unmanageable (Goedel
// numbers of whole formulas).
term::TermP canonical_numeral(const Nat& n);

// Number of bits below which canonical numerals stay in tree form.
inline constexpr std::uint64_t kTreeNumeralBits = 24;

// Structural recognizers for the canonical constructions. match_E returns j
// when t is exactly build_E(j); verify_dag_numeral returns the represented
// value when the dag is exactly a build_dag_term layout.
std::optional<std::uint64_t> match_E(term::TermP t);
std::optional<Nat> verify_dag_numeral(const term::DagTerm& d);

// Interpretation-free evaluation for terms whose theta occurrences all sit
// inside canonical E/G shapes. Returns nullopt when the term's value is not
// syntactically pinned this way (which does not prove it unobservable).
std::optional<Nat> try_observable_eval(term::TermP t);

std::uint64_t theta_depth(term::TermP t);

struct ObservabilityVerdict {
  bool observed_constant = false;
  Nat value;  // when constant
  Nat witness_a, witness_b;
  std::uint64_t seed_a = 0, seed_b = 0;
  std::uint64_t samples = 0;
};

// Samples independently seeded interpretations. A constant verdict is a
// semi-decision: sampling cannot prove observability in general.
ObservabilityVerdict check_observable(term::TermP t, std::uint64_t samples, std::uint64_t seed);

}  // namespace qg::enc
