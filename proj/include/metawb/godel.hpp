#pragma once

// Gödel numbering: symbol table, prime-power sequence coding, formulas and
// proofs as nested sequences.
//
// Proof codes are far too large to hold as plain integers (a one-line proof
// of 0 = 0 is already 2^230401), so a GodelCode is either a materialized
// natural number or, past kMaterializeBits, the symbolic sequence form
// <c_0, ..., c_{n-1}> whose value is p_1^(c_0+1) * ... * p_n^(c_{n-1}+1).
// The representation is canonical, so structural equality is numeric
// equality.

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "metawb/natural.hpp"
#include "metawb/syntax.hpp"

namespace metawb::godel {

inline constexpr std::size_t kMaterializeBits = 65536;

class DecodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GodelCode {
 public:
  GodelCode() : rep_(Natural(0)) {}
  GodelCode(Natural n);  // NOLINT: implicit on purpose, codes are numbers
  GodelCode(unsigned long long n) : GodelCode(Natural(n)) {}  // NOLINT

  // The code of the sequence <components...>.
  static GodelCode sequence(std::vector<GodelCode> components);

  bool is_materialized() const { return std::holds_alternative<Natural>(rep_); }
  // Throws std::domain_error for symbolic codes.
  const Natural& value() const;
  // Components of a symbolic code (empty for materialized ones).
  const std::vector<GodelCode>& symbolic_components() const;

  // Decimal if materialized, factored otherwise.
  std::string to_string() const;
  std::string to_decimal() const;
  // 2^10 * 3^2 * 5^2 ; symbolic exponents print as (code + 1).
  std::string to_factored() const;
  // Accepts decimal or the factored form. Throws DecodeError.
  static GodelCode parse(std::string_view text);

  friend bool operator==(const GodelCode& a, const GodelCode& b);
  // Exact numeric order. Symbolic codes are compared by logarithm with
  // interval arithmetic at increasing precision; throws std::domain_error
  // when a symbolic code has a symbolic component.
  friend std::strong_ordering operator<=>(const GodelCode& a, const GodelCode& b);

 private:
  struct Seq {
    std::vector<GodelCode> comps;
  };
  explicit GodelCode(Seq s) : rep_(std::move(s)) {}
  std::variant<Natural, Seq> rep_;
};

// i-th prime, indexed from 1 (prime(1) = 2).
unsigned long prime(std::size_t i);

Natural symbol_code(const syntax::Symbol& s);
// Throws DecodeError for even or unassigned codes.
syntax::Symbol symbol_from_code(const GodelCode& c);

GodelCode encode_seq(const std::vector<Natural>& a);
GodelCode encode_seq(const std::vector<GodelCode>& a);
// Throws DecodeError for 0 or a gapped prime support.
std::vector<GodelCode> decode_seq(const GodelCode& c);
// Same, requiring every entry to be materialized.
std::vector<Natural> decode_seq_values(const GodelCode& c);

// <-> is expanded first; membership atoms are not encodable
// (std::invalid_argument).
GodelCode encode_formula(const syntax::Formula& f);
syntax::Formula decode_formula(const GodelCode& c);

// Throws std::invalid_argument for an empty list.
GodelCode encode_proof(const std::vector<syntax::Formula>& lines);
std::vector<syntax::Formula> decode_proof(const GodelCode& c);

}  // namespace metawb::godel
