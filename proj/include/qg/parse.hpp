#pragma once

#include <stdexcept>
#include <string>

#include "qg/term.hpp"

namespace qg::parse {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg) + " at offset " + std::to_string(pos)),
        position(pos) {}
};

// Term grammar (the single source of truth for the textual syntax):
//
//   term    := chain
//   chain   := primary (("-" | "÷" | "/") primary)*        left-associative
//   primary := "C0" | "C1" | "C2" | "v" digits
//            | fn "(" term ("," term)* ")"                  fn arity checked
//            | "(" term ")"
//            | "dag{" records "}"
//   fn      := sub | div | max | root | log | count | theta
//
// "-" is sugar for sub, "÷" (or "/") for div. With anc_constants enabled,
// "C" digits (>= 3) is additionally accepted; only translate_anc consumes
// such terms.
term::TermP parse_term(const std::string& text, bool anc_constants = false);

// Formula grammar:
//
//   formula := or_expr ("->" formula)?                      right-associative
//   or_expr := and_expr ("|" and_expr)*
//   and_expr:= unary ("&" unary)*
//   unary   := "~" unary
//            | ("forall" | "exists") "v" digits "(" formula ")"
//            | PredName "(" term ("," term)* ")"
//            | "(" formula ")"
//            | term ("=" | "<=" | "≤" | "!=") term
//
// With sugar_predicates enabled, Add(x,y,z) / Mult(x,y,z) atoms are
// accepted; expand_arith_predicates rewrites them away.
term::FormulaP parse_formula(const std::string& text, bool anc_constants = false,
                             bool sugar_predicates = false);

}  // namespace qg::parse
