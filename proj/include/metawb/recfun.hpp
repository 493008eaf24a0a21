#pragma once

// Recursive functions built from projections, +, ×, 1_<, composition and
// the μ-operator, evaluated under a fuel budget; and the semi-decision
// searches that go with them: r.e. ranges, Diophantine roots, the word
// problem of a Thue system, digit runs in √2.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metawb/natural.hpp"
#include "metawb/syntax.hpp"

namespace metawb::recfun {

using syntax::ParseError;

class RecExpr {
 public:
  enum class Kind { Proj, Plus, Times, Less, Comp, Mu };

  // Throw std::invalid_argument when arities do not fit.
  static RecExpr proj(std::size_t n, std::size_t i);
  static RecExpr plus();
  static RecExpr times();
  static RecExpr less();
  static RecExpr comp(RecExpr g, std::vector<RecExpr> hs);
  static RecExpr mu(RecExpr g);

  Kind kind() const;
  std::size_t arity() const;
  std::size_t proj_index() const;  // 1-based
  const RecExpr& g() const;        // Comp head or Mu body
  const std::vector<RecExpr>& hs() const;

  struct Node;

 private:
  explicit RecExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// (proj n i), plus, times, less, (comp G H ...), (mu G)
std::string to_string(const RecExpr& e);
RecExpr parse_expr(std::string_view text);

using Fuel = std::uint64_t;

struct EvalResult {
  std::optional<Natural> value;  // empty: fuel exhausted
  Fuel fuel_used = 0;
};

// One unit of fuel per primitive application and per μ probe. Throws
// std::invalid_argument when args does not match the arity.
EvalResult eval(const RecExpr& e, const std::vector<Natural>& args, Fuel fuel);

// Values of f on inputs 0..input_budget, each call with its own fuel.
std::set<Natural> enumerate_range(const RecExpr& f, std::uint64_t input_budget, Fuel fuel);

// Least m <= budget with f(m) = n; nullopt means unknown, never "no".
std::optional<std::uint64_t> semidecide_membership(const RecExpr& f, const Natural& n, std::uint64_t budget,
                                                   Fuel fuel);

// Finite families for the diagonal argument: row m is family[m], the
// diagonal is d(n) = family[n](n) + 1.
std::vector<RecExpr> diagonal_family();
// True when d differs from every row at the row's own index; rows whose
// diagonal value runs out of fuel make the check fail.
bool diagonal_check(const std::vector<RecExpr>& family, Fuel fuel);

// Integer polynomials in named variables.
class Polynomial {
 public:
  using Monomial = std::map<std::string, unsigned>;

  static Polynomial constant(const Integer& c);
  static Polynomial variable(const std::string& name);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial pow(unsigned e) const;

  std::vector<std::string> variables() const;  // sorted
  Integer evaluate(const std::map<std::string, Integer>& at) const;
  const std::map<Monomial, Integer>& terms() const { return terms_; }

 private:
  std::map<Monomial, Integer> terms_;  // no zero coefficients
};

std::string to_string(const Polynomial& p);
// Sums of products of integers, variables, powers v^k and parentheses;
// "lhs = rhs" means lhs - rhs.
Polynomial parse_polynomial(std::string_view text);

// Tuples over the sorted variables by increasing max-norm, then
// lexicographically with 0, 1, -1, 2, -2, ... per coordinate. Returns the
// first root with max-norm <= bound. Throws std::invalid_argument for a
// polynomial without variables.
std::optional<std::vector<Integer>> diophantine_search(const Polynomial& p, std::uint64_t bound);

struct ThueSystem {
  std::vector<std::pair<std::string, std::string>> axioms;  // words over {a, b}
};

// Lines "A == B"; '#' comments.
ThueSystem parse_thue(std::string_view text);

struct ThueStep {
  std::size_t axiom = 0;
  bool forward = true;      // A_i replaced by B_i
  std::size_t position = 0;
  std::string result;
};

// Breadth-first search from e by replacing occurrences of A_i by B_i or
// back; step_budget bounds the number of words expanded. An empty trace
// means e = f.
std::optional<std::vector<ThueStep>> thue_semidecide(const ThueSystem& s, const std::string& e,
                                                     const std::string& f, std::uint64_t step_budget);
bool replay_thue(const ThueSystem& s, const std::string& e, const std::string& f,
                 const std::vector<ThueStep>& trace);

// Decimal digits of √2 after the point (index 0 is 4), by the
// digit-by-digit square root.
class Sqrt2Digits {
 public:
  int operator()(std::size_t index);

 private:
  std::vector<int> digits_;
  Natural root_ = 1;
  Natural rem_ = 1;
};

// First p with p + run_length <= budget and digits p..p+run_length-1 all
// equal to `digit`. run_length must be positive.
std::optional<std::uint64_t> digit_run_search(const std::function<int(std::size_t)>& digits, int digit,
                                              std::uint64_t run_length, std::uint64_t budget);

}  // namespace metawb::recfun
