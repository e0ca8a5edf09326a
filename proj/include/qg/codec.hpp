#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qg/nat.hpp"
#include "qg/term.hpp"

namespace qg::godel {

// Byte-style encoding: a byte is a 6-bit value. Symbol bytes live in
// [32, 63], variable/number digits in [0, 31]. The Goedel number of a byte
// string is its base-64 value, first byte most significant.
//
// Frozen symbol table (format-defining; any change is a version bump):
//   32 "("  33 ")"  34 ","  35 "."  36 not  37 and  38 or  39 implies
//   40 forall  41 exists  42 "="  43 "<="  44 C0  45 C1  46 C2  47 Vhat
//   48 sub  49 div  50 max  51 root  52 log  53 count  54 theta
// Reserved extension codes:
//   55 HilbPrf  56 SubstPrf  57 dag-numeral literal
//
// The j-th variable is Vhat followed by max(1, ceil(log32(j+1))) base-32
// digits, most significant first. Digits are decoded greedily; a symbol byte
// always terminates the run.
using Byte = std::uint8_t;

struct GoedelBytes {
  std::vector<Byte> bytes;

  bool operator==(const GoedelBytes& o) const { return bytes == o.bytes; }
  std::uint64_t size() const { return bytes.size(); }
};

struct MalformedBytes : std::runtime_error {
  std::size_t offset;
  MalformedBytes(std::string msg, std::size_t off)
      : std::runtime_error(std::move(msg) + " at offset " + std::to_string(off)), offset(off) {}
};

enum Sym : Byte {
  kLParen = 32,
  kRParen = 33,
  kComma = 34,
  kPeriod = 35,
  kNot = 36,
  kAnd = 37,
  kOr = 38,
  kImplies = 39,
  kForAll = 40,
  kExists = 41,
  kEq = 42,
  kLeq = 43,
  kC0 = 44,
  kC1 = 45,
  kC2 = 46,
  kVhat = 47,
  kSub = 48,
  kDiv = 49,
  kMax = 50,
  kRoot = 51,
  kLog = 52,
  kCount = 53,
  kTheta = 54,
  kHilbPrf = 55,
  kSubstPrf = 56,
  kDagLit = 57,
};

// A proof, at the byte level, is the sequence of its step formulas, each
// terminated by the period symbol. Justifications live outside the bytes.
struct ProofBytes {
  std::vector<term::FormulaP> steps;
};

GoedelBytes encode(term::TermP t);
GoedelBytes encode(term::FormulaP f);
GoedelBytes encode_proof(const std::vector<term::FormulaP>& steps);

term::TermP decode_term(const GoedelBytes& b);
term::FormulaP decode_formula(const GoedelBytes& b);
std::vector<term::FormulaP> decode_proof(const GoedelBytes& b);

using Decoded = std::variant<term::TermP, term::FormulaP, ProofBytes>;
Decoded decode(const GoedelBytes& b);

Nat godel_number(const GoedelBytes& b);
inline std::uint64_t bit_length(const GoedelBytes& b) { return 6 * b.bytes.size(); }

std::uint64_t var_digit_count(std::uint64_t j);

// .g64 container: magic "QG64", one version octet, a 4-octet big-endian
// symbol count, then the 6-bit stream packed 4 symbols per 3 octets,
// zero-padded.
std::string pack_g64(const GoedelBytes& b);
GoedelBytes unpack_g64(const std::string& data);

}  // namespace qg::godel
