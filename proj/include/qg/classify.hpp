#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qg/term.hpp"

namespace qg::cls {

enum class Level : std::uint8_t { Delta0, Pi, Sigma, Unclassified };

struct FormulaClass {
  Level level = Level::Unclassified;
  std::uint32_t n = 0;  // Pi(n) / Sigma(n)

  bool operator==(const FormulaClass& o) const { return level == o.level && n == o.n; }
};

FormulaClass delta0();
FormulaClass pi(std::uint32_t n);
FormulaClass sigma(std::uint32_t n);
std::string to_string(const FormulaClass& c);

// Delta0 when every quantifier is a bounded pattern; Pi(n)/Sigma(n) by the
// standard alternating prefix-block recursion; Unclassified when a theta
// symbol occurs outside a canonical E/G subterm (the observable-primary-term
// discipline) or the formula is not in one of the literal prefix shapes.
FormulaClass classify(term::FormulaP phi);

// Path to the first raw theta occurrence (for diagnostics), or nullopt.
std::optional<std::string> first_raw_theta(term::FormulaP phi);

// Group-1 eligibility: a universal prefix over a bounded-shape matrix that
// contains no E_j subterm with j >= 2. This is deliberately independent of
// the theta discipline (the congruence axiom for theta mentions theta(v)).
bool is_simple_pi1(term::FormulaP phi);

// Replaces every additive-naming constant C_J (J >= 3) with the term
// E_{J-1}; C0..C2 untouched.
term::FormulaP translate_anc(term::FormulaP phi);

// Rewrites Add(x,y,z) and Mult(x,y,z) sugar atoms into their Sub/Div
// definitions; the result is sugar-free.
term::FormulaP expand_arith_predicates(term::FormulaP phi);

}  // namespace qg::cls
