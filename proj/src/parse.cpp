#include "qg/parse.hpp"

#include <cctype>

namespace qg::parse {

using namespace qg::term;

namespace {

class Cursor {
 public:
  Cursor(const std::string& s, bool anc, bool sugar) : s_(s), anc_(anc), sugar_(sugar) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool try_tok(const std::string& tok) {
    skip_ws();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      // keyword tokens must not continue into an identifier
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        std::size_t end = pos_ + tok.size();
        if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
          return false;
      }
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok) {
    if (!try_tok(tok)) throw ParseError("expected '" + tok + "'", pos_);
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  std::uint64_t number() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected number");
    std::uint64_t n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      n = n * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (n > 0xffffffffULL) fail("number out of range");
      ++pos_;
    }
    return n;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

  bool anc() const { return anc_; }
  bool sugar() const { return sugar_; }

  const std::string& text() const { return s_; }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  bool anc_;
  bool sugar_;
};

TermP term_chain(Cursor& c);

TermP term_primary(Cursor& c) {
  c.skip_ws();
  if (c.try_tok("(")) {
    TermP t = term_chain(c);
    c.expect(")");
    return t;
  }
  if (c.try_tok("dag{")) {
    // records separated by ';' until '}'
    std::string records;
    while (true) {
      if (c.eof()) c.fail("unterminated dag literal");
      char ch = c.text()[c.pos()];
      if (ch == '}') break;
      records += ch == ';' ? '\n' : ch;
      c.set_pos(c.pos() + 1);
    }
    c.expect("}");
    auto d = std::make_shared<DagTerm>(dag_from_records(records));
    return dag_numeral(std::move(d));
  }
  std::size_t start = c.pos();
  std::string id = c.ident();
  if (id.empty()) c.fail("expected term");
  if (id == "C0") return c0();
  if (id == "C1") return c1();
  if (id == "C2") return c2();
  if (id[0] == 'C' && id.size() > 1 && std::isdigit(static_cast<unsigned char>(id[1]))) {
    if (!c.anc()) {
      c.set_pos(start);
      c.fail("extended constant '" + id + "' requires the ANC grammar");
    }
    std::uint64_t j = std::stoull(id.substr(1));
    if (j < 3 || j > 0xffffffffULL) {
      c.set_pos(start);
      c.fail("extended constant index out of range");
    }
    return anc_const(static_cast<std::uint32_t>(j));
  }
  if (id[0] == 'v' && id.size() > 1) {
    bool digits = true;
    for (std::size_t i = 1; i < id.size(); ++i)
      digits = digits && std::isdigit(static_cast<unsigned char>(id[i]));
    if (digits) return var(static_cast<std::uint32_t>(std::stoul(id.substr(1))));
  }
  for (Fn f : {Fn::Sub, Fn::Div, Fn::Max, Fn::Root, Fn::Log, Fn::Count, Fn::Theta}) {
    if (id == fn_name(f)) {
      c.expect("(");
      TermP a = term_chain(c);
      if (arity(f) == 1) {
        c.expect(")");
        return apply1(f, a);
      }
      c.expect(",");
      TermP b = term_chain(c);
      c.expect(")");
      return apply2(f, a, b);
    }
  }
  c.set_pos(start);
  c.fail("unknown term symbol '" + id + "'");
}

TermP term_chain(Cursor& c) {
  TermP t = term_primary(c);
  while (true) {
    if (c.try_tok("-")) {
      t = sub(t, term_primary(c));
    } else if (c.try_tok("\xc3\xb7") || c.try_tok("/")) {
      t = div(t, term_primary(c));
    } else {
      return t;
    }
  }
}

FormulaP formula_impl(Cursor& c);

std::uint32_t quant_var(Cursor& c) {
  std::size_t start = c.pos();
  std::string id = c.ident();
  if (id.size() < 2 || id[0] != 'v') {
    c.set_pos(start);
    c.fail("expected quantifier variable vK");
  }
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) {
      c.set_pos(start);
      c.fail("expected quantifier variable vK");
    }
  }
  return static_cast<std::uint32_t>(std::stoul(id.substr(1)));
}

FormulaP formula_unary(Cursor& c) {
  if (c.try_tok("~")) return fnot(formula_unary(c));
  if (c.try_tok("forall") || c.try_tok("\xe2\x88\x80")) {
    std::uint32_t v = quant_var(c);
    c.expect("(");
    FormulaP body = formula_impl(c);
    c.expect(")");
    return forall(v, body);
  }
  if (c.try_tok("exists") || c.try_tok("\xe2\x88\x83")) {
    std::uint32_t v = quant_var(c);
    c.expect("(");
    FormulaP body = formula_impl(c);
    c.expect(")");
    return exists(v, body);
  }
  for (PredSym p : {PredSym::HilbPrf, PredSym::SubstPrf, PredSym::Add, PredSym::Mult}) {
    if ((p == PredSym::Add || p == PredSym::Mult) && !c.sugar()) continue;
    if (c.try_tok(pred_name(p))) {
      c.expect("(");
      std::vector<TermP> args;
      args.push_back(term_chain(c));
      while (c.try_tok(",")) args.push_back(term_chain(c));
      c.expect(")");
      return pred_atom(p, std::move(args));
    }
  }
  if (c.peek() == '(') {
    // Either a parenthesized formula or a parenthesized term starting an
    // atom; try the formula reading first.
    std::size_t start = c.pos();
    try {
      c.expect("(");
      FormulaP f = formula_impl(c);
      c.expect(")");
      return f;
    } catch (const ParseError&) {
      c.set_pos(start);
    }
  }
  TermP l = term_chain(c);
  if (c.try_tok("!=")) return neq(l, term_chain(c));
  if (c.try_tok("<=") || c.try_tok("\xe2\x89\xa4")) return leq(l, term_chain(c));
  if (c.try_tok("=")) return eq(l, term_chain(c));
  c.fail("expected relation symbol");
}

FormulaP formula_and(Cursor& c) {
  FormulaP f = formula_unary(c);
  while (c.try_tok("&")) f = fand(f, formula_unary(c));
  return f;
}

FormulaP formula_or(Cursor& c) {
  FormulaP f = formula_and(c);
  while (c.try_tok("|")) f = f_or(f, formula_and(c));
  return f;
}

FormulaP formula_impl(Cursor& c) {
  FormulaP f = formula_or(c);
  if (c.try_tok("->")) return implies(f, formula_impl(c));
  return f;
}

}  // namespace

TermP parse_term(const std::string& text, bool anc_constants) {
  Cursor c(text, anc_constants, false);
  TermP t = term_chain(c);
  if (!c.eof()) c.fail("trailing input after term");
  return t;
}

FormulaP parse_formula(const std::string& text, bool anc_constants, bool sugar_predicates) {
  Cursor c(text, anc_constants, sugar_predicates);
  FormulaP f = formula_impl(c);
  if (!c.eof()) c.fail("trailing input after formula");
  return f;
}

}  // namespace qg::parse
