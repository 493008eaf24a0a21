#pragma once

// Equational fragment of primitive recursive arithmetic: definitions by
// explicit composition or primitive recursion, the valuation of closed
// terms, an equational proof checker and the soundness audit.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metawb/natural.hpp"
#include "metawb/syntax.hpp"

namespace metawb::arp {

using syntax::ParseError;

class Term {
 public:
  enum class Kind { Var, Zero, Succ, App };

  Term();  // 0
  static Term var(unsigned index);
  static Term zero();
  static Term succ(Term t);
  static Term app(std::string name, std::vector<Term> args);
  static Term numeral(unsigned n);

  Kind kind() const;
  unsigned var_index() const;
  const Term& arg() const;  // Succ operand
  const std::string& name() const;
  const std::vector<Term>& args() const;

  friend bool operator==(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Term& t);
// x0, 0, S(t), f(t, ...), decimal numerals, and infix sugar t + u, t * u
// for add(t, u), mul(t, u).
Term parse_term(std::string_view text);

std::set<unsigned> vars(const Term& t);
bool is_closed(const Term& t);
Term substitute(const Term& t, const std::map<unsigned, Term>& sigma);
Term substitute(const Term& t, unsigned v, const Term& by);

struct Equation {
  Term lhs;
  Term rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

std::string to_string(const Equation& e);
Equation parse_equation(std::string_view text);

struct PRDefinition {
  std::string name;
  std::size_t arity = 0;
  std::vector<Equation> equations;  // explicit: one; recursive: base, step
};

struct DefinitionCheck {
  bool accepted = false;
  std::string reason;
};

class DefinitionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Environment {
 public:
  // Throws DefinitionError when check_pr_definition rejects d.
  void add(const PRDefinition& d);
  const PRDefinition* find(std::string_view name) const;
  const std::vector<PRDefinition>& definitions() const { return defs_; }
  // Argument position of the recursion, nullopt for explicit definitions.
  std::optional<std::size_t> recursion_position(std::string_view name) const;

 private:
  std::vector<PRDefinition> defs_;
  std::vector<std::optional<std::size_t>> positions_;
};

DefinitionCheck check_pr_definition(const PRDefinition& d, const Environment& env);

// Lines "name/arity: lhs = rhs"; consecutive lines with one name form a
// definition. '#' starts a comment.
Environment parse_environment(std::string_view text);
std::string print_environment(const Environment& env);
// add, mul, exp2
Environment standard_environment();

class ValuationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Call-by-value unfolding, memoized on (letter, arguments). Throws
// std::invalid_argument for free variables or undefined letters.
class Valuator {
 public:
  explicit Valuator(const Environment& env, std::uint64_t max_steps = 100'000'000);
  Natural operator()(const Term& t);
  Natural call(const std::string& name, const std::vector<Natural>& args);

 private:
  Natural eval(const Term& t, const std::map<unsigned, Natural>& binding, const std::string* self,
               const Natural* self_value);
  void tick();

  const Environment& env_;
  std::uint64_t max_steps_;
  std::uint64_t steps_ = 0;
  std::map<std::string, std::map<std::vector<Natural>, Natural>, std::less<>> memo_;
};

Natural valuate(const Term& t, const Environment& env);

struct Justification {
  enum class Kind { Axiom, Refl, Sym, Trans, Cong, Subst, Hyp, Ind };
  Kind kind = Kind::Refl;
  std::string letter;                 // axiom definition name; cong letter or "S"
  std::size_t equation = 0;           // axiom: 1-based equation number
  std::map<unsigned, Term> sigma;     // axiom instance
  std::vector<std::size_t> lines;     // cited lines, 0-based
  unsigned var = 0;                   // subst / hyp / ind variable
  std::optional<Term> term;           // subst replacement
};

struct ProofLine {
  Equation eq;
  Justification just;
};

using EquationalProof = std::vector<ProofLine>;

struct ProofCheck {
  bool valid = false;
  std::size_t line = 0;  // 0-based failing line
  std::string reason;
};

// A line justified by "hyp x" assumes its equation for an induction on x;
// lines depending on it may not substitute into its variables, and
// "ind b s x" discharges it. The last line must depend on no hypothesis.
ProofCheck check_equational_proof(const EquationalProof& p, const Environment& env);

// Precondition: the proof checks and its conclusion is closed; throws
// std::invalid_argument otherwise.
bool audit_soundness(const EquationalProof& p, const Environment& env);

// "n. t = u [just]" lines; line numbers in justifications are 1-based.
EquationalProof parse_proof(std::string_view text);
std::string print_proof(const EquationalProof& p);

// A valid proof with a closed, hypothesis-free conclusion.
EquationalProof random_proof(const Environment& env, std::mt19937_64& rng, std::size_t steps);

struct SearchReport {
  std::size_t states = 0;   // distinct line sets explored
  std::size_t proofs = 0;   // valid proofs examined
  bool found = false;
  EquationalProof witness;
};

// Every proof of at most max_lines lines whose instantiations, reflexivity
// terms, hypotheses and substitutions draw on `terms`; reports whether one
// concludes `target`.
SearchReport search_proofs(const Environment& env, const Equation& target, std::size_t max_lines,
                           const std::vector<Term>& terms);

}  // namespace metawb::arp
