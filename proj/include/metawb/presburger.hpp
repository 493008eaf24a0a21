#pragma once

// Decision procedure for the additive theory of the naturals: Cooper's
// quantifier elimination over linear forms with divisibility atoms,
// relativized to nonnegative values.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "metawb/natural.hpp"
#include "metawb/syntax.hpp"

namespace metawb::presburger {

// Σ c_i x_i + k
struct Linear {
  std::map<unsigned, Integer> coef;  // no zero entries
  Integer constant = 0;

  Integer at(unsigned v) const;
  bool is_constant() const { return coef.empty(); }
  friend bool operator==(const Linear&, const Linear&) = default;
  friend bool operator<(const Linear& a, const Linear& b) {
    return a.coef != b.coef ? a.coef < b.coef : a.constant < b.constant;
  }
};

Linear operator+(const Linear& a, const Linear& b);
Linear operator-(const Linear& a, const Linear& b);
Linear operator*(const Integer& k, const Linear& a);

struct Atom {
  enum class Kind { Pos, Div, NDiv };  // 0 < t, d | t, not d | t
  Kind kind = Kind::Pos;
  Integer d = 0;
  Linear t;
  friend bool operator==(const Atom&, const Atom&) = default;
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.d != b.d) return a.d < b.d;
    return a.t < b.t;
  }
};

class PFormula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Exists, Forall };

  static PFormula truth(bool b);
  static PFormula atom(Atom a);
  static PFormula negation(PFormula f);
  static PFormula conj(std::vector<PFormula> fs);
  static PFormula disj(std::vector<PFormula> fs);
  static PFormula exists(unsigned v, PFormula body);
  static PFormula forall(unsigned v, PFormula body);

  Kind kind() const;
  const Atom& atom() const;
  const std::vector<PFormula>& parts() const;  // Not: one; And/Or: several; quantifiers: body
  unsigned var() const;

  bool is_quantifier_free() const;
  friend bool operator==(const PFormula& a, const PFormula& b);

  struct Node;

 private:
  explicit PFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Throws std::invalid_argument when f uses ×, ∈, or is otherwise outside
// the additive language.
PFormula from_formula(const syntax::Formula& f);

// Numerals in S-notation, k*x for repeated variables, d | t for
// divisibility.
std::string to_string(const PFormula& f);

// Quantifier-free, equivalent over the naturals, normalized: negation
// normal form, gcd-reduced atoms, constant atoms folded.
PFormula eliminate_quantifiers(const PFormula& f);

// Throws std::invalid_argument for open or quantified input.
bool eval_closed_qfree(const PFormula& f);

// Throws std::invalid_argument for open input or input outside the
// additive language.
bool decide(const syntax::Formula& f);
bool decide(const PFormula& f);

}  // namespace metawb::presburger
