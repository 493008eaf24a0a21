#pragma once

// First-order syntax over the arithmetic signature 0, S, +, *, =, <
// (plus the membership predicate for the set-theory fragment).
//
// Terms and formulas are immutable trees with shared structure; copying a
// Term or Formula is a pointer copy.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metawb::syntax {

struct VarId {
  unsigned index = 0;
  auto operator<=>(const VarId&) const = default;
};

enum class Signature {
  arithmetic,  // 0, S, +, *, =, <
  additive,    // Presburger: no *
  set_theory,  // variables, =, membership
};

class Term {
 public:
  enum class Kind { Var, Zero, Succ, Plus, Times };

  static Term var(VarId v);
  static Term var(unsigned index) { return var(VarId{index}); }
  static Term zero();
  static Term succ(Term t);
  static Term plus(Term a, Term b);
  static Term times(Term a, Term b);
  // S^n(0)
  static Term numeral(unsigned n);

  Kind kind() const;
  VarId var_id() const;
  const Term& lhs() const;  // Succ argument, or left operand
  const Term& rhs() const;

  std::size_t size() const;
  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

  struct Node;  // defined in syntax.cpp

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind { Eq, Lt, Mem, Not, Or, And, Implies, Iff, Exists, Forall };

  static Formula eq(Term a, Term b);
  static Formula lt(Term a, Term b);
  static Formula mem(Term a, Term b);
  static Formula negation(Formula f);
  static Formula disj(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula exists(VarId v, Formula body);
  static Formula forall(VarId v, Formula body);

  Kind kind() const;
  bool is_atom() const;
  bool is_binary() const;     // Or, And, Implies, Iff
  bool is_quantifier() const;  // Exists, Forall

  // Atom operands.
  const Term& left_term() const;
  const Term& right_term() const;
  // Not operand, binary left operand, quantifier body.
  const Formula& sub() const;
  const Formula& right() const;
  VarId bound() const;

  std::size_t size() const;
  // Number of connectives and quantifiers (atoms have degree 0).
  std::size_t degree() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  struct Node;  // defined in syntax.cpp

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

Formula parse_formula(std::string_view text, Signature sig = Signature::arithmetic);
Term parse_term(std::string_view text, Signature sig = Signature::arithmetic);

// Throws ParseError (position 0) if f uses symbols outside the signature.
void check_signature(const Formula& f, Signature sig);
bool fits_signature(const Formula& f, Signature sig);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

// Polish notation over the Gödel symbol alphabet.
struct Symbol {
  enum class Kind { Zero, Succ, Plus, Times, Eq, Lt, Not, Or, And, Implies, Exists, Forall, Var };
  Kind kind;
  unsigned var = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

std::string to_string(const Symbol& s);
std::string to_string(const std::vector<Symbol>& symbols);

// Strict form: only the core connectives ~, \/, exists are allowed.
std::vector<Symbol> print_polish(const Formula& f);
// Full table alphabet: &, ->, forall are emitted with their own symbols.
// Iff and membership have no symbol and raise std::invalid_argument.
std::vector<Symbol> to_polish(const Formula& f);
// Arity-directed decoding; throws std::invalid_argument on ill-formed or
// trailing input.
Formula parse_polish(const std::vector<Symbol>& symbols);

// A -> B := ~A \/ B ; A /\ B := ~(A -> ~B) ; forall x A := ~exists x ~A ;
// A <-> B := (A -> B) /\ (B -> A).
Formula normalize_core(const Formula& f);
// Rewrites only <-> into (A -> B) /\ (B -> A).
Formula expand_iff(const Formula& f);
bool is_core(const Formula& f);
bool is_quantifier_free(const Formula& f);

std::set<VarId> free_vars(const Term& t);
std::set<VarId> free_vars(const Formula& f);
bool occurs_free(VarId v, const Formula& f);
bool is_closed(const Formula& f);
// Largest variable index occurring anywhere (free or bound); -1 if none.
long max_var_index(const Term& t);
long max_var_index(const Formula& f);

Term substitute(const Term& t, VarId v, const Term& by);
// Capture-avoiding; a binder that would capture is renamed to the least
// index not free in the body, not free in `by`, and different from v.
Formula substitute(const Formula& f, VarId v, const Term& by);

bool alpha_equal(const Formula& a, const Formula& b);

// Matches `pattern` against `target` up to renaming of bound variables.
// Free occurrences of variables in `pattern_vars` stand for arbitrary
// terms; bindings are accumulated consistently in `bindings`. A term bound
// to a pattern variable may not mention variables bound in the target at
// the point of occurrence.
bool match_formula(const Formula& pattern, const Formula& target,
                   const std::set<VarId>& pattern_vars, std::map<VarId, Term>& bindings);
bool match_term(const Term& pattern, const Term& target,
                const std::set<VarId>& pattern_vars, std::map<VarId, Term>& bindings);

enum class ArithClass { elementary_Pi01, co_elementary_Sigma01, quantifier_free, other };
std::string to_string(ArithClass c);
// Throws std::invalid_argument when f is not closed.
ArithClass classify_arith(const Formula& f);

}  // namespace metawb::syntax
