#pragma once

// Ordinals below ε₀ in Cantor normal form, the exponential polynomials
// they come from, and the 2^α recursion.

#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metawb/natural.hpp"

namespace metawb::ordinals {

class Ord;

// ω^exponent · coefficient
struct OrdTerm;

class Ord {
 public:
  Ord();  // 0
  static Ord natural(const Natural& n);
  static Ord omega();
  static Ord omega_pow(const Ord& e, const Natural& c = 1);
  // Throws std::invalid_argument unless exponents strictly decrease and
  // coefficients are positive.
  static Ord from_terms(std::vector<OrdTerm> terms);

  const std::vector<OrdTerm>& terms() const;
  bool is_zero() const;
  bool is_successor() const;
  bool is_limit() const;
  Natural finite_part() const;

 private:
  std::shared_ptr<const std::vector<OrdTerm>> terms_;
};

struct OrdTerm {
  Ord exponent;
  Natural coef;
};

std::strong_ordering compare(const Ord& a, const Ord& b);
inline bool operator==(const Ord& a, const Ord& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Ord& a, const Ord& b) { return compare(a, b); }

Ord add(const Ord& a, const Ord& b);
// Throws std::invalid_argument when a is not a successor.
Ord predecessor(const Ord& a);

// l[n]: the last term ω^β·c loses one copy of ω^β, which comes back as
// ω^δ·n when β = δ+1 and as ω^(β[n]) when β is a limit. Throws
// std::invalid_argument when l is not a limit.
Ord fundamental_sequence(const Ord& l, unsigned n);

// 2^a in closed form: the limit part ω^β₁c₁ + ... + ω^βₖcₖ with finite part
// m maps to ω^(ω^(β₁⊖1)c₁ + ... + ω^(βₖ⊖1)cₖ) · 2^m, where β⊖1 is β - 1 for
// finite β and β itself otherwise.
Ord two_pow(const Ord& a);

// Substitutes m for ω. Exponents are evaluated first, so keep them small.
Natural evaluate_at(const Ord& a, unsigned m);

// `w^(e)*c + ... + n`; ω itself prints as `w`.
std::string to_string(const Ord& a);
// Accepts any sum of `n`, `w`, `w*c`, `w^(e)` and `w^(e)*c`, normalizing by
// ordinal addition. Throws std::invalid_argument with a position.
Ord parse_ord(std::string_view text);

class ExpPoly {
 public:
  enum class Kind { Zero, X, Sum, XPow };

  static ExpPoly zero();
  static ExpPoly x();
  static ExpPoly sum(ExpPoly a, ExpPoly b);
  static ExpPoly xpow(ExpPoly e);

  Kind kind() const;
  const ExpPoly& left() const;   // Sum left operand, XPow exponent
  const ExpPoly& right() const;  // Sum right operand

  struct Node;

 private:
  explicit ExpPoly(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const ExpPoly& e);
// X read as ω, Sum as ordinal addition, XPow as ω-exponentiation.
Ord normalize(const ExpPoly& e);

}  // namespace metawb::ordinals
