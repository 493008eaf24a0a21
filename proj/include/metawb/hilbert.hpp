#pragma once

// Hilbert-style predicate calculus: five logical axiom schemes, five rules,
// theories given by an axiom recognizer, Dem(d, a) and theorem enumeration
// by proof code.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metawb/godel.hpp"
#include "metawb/syntax.hpp"

namespace metawb::hilbert {

using syntax::Formula;
using godel::GodelCode;

struct Theory {
  std::string name;
  syntax::Signature signature;
  // Receives a formula in core form (~, \/, exists); returns the axiom's
  // name when it is an instance of a non-logical axiom or scheme.
  std::function<std::optional<std::string>(const Formula&)> axiom_recognizer;
};

Theory pure_logic();
Theory peano();
Theory presburger();  // Peano without P5 and P6
Theory zf();          // extensionality, regularity, comprehension
// "logic", "peano", "presburger", "zf"; throws std::invalid_argument.
Theory theory_by_name(std::string_view name);

// Scheme number 1..5, or nullopt.
std::optional<int> is_logical_axiom(const Formula& f);
bool is_axiom_of(const Theory& t, const Formula& f);

struct CheckResult {
  bool valid = false;
  std::size_t line = 0;  // first failing line (0-based) when invalid
  std::string reason;
  std::vector<std::string> justifications;  // one per checked line
};

CheckResult check_derivation(const Theory& t, const std::vector<Formula>& lines);

bool dem(const GodelCode& d, const GodelCode& a, const Theory& t);

struct Theorem {
  GodelCode code;  // proof code d
  Formula formula;  // last line
};

struct EnumerationLimits {
  std::size_t max_pool = 200'000;     // candidate line formulas
  std::size_t max_nodes = 2'000'000;  // proof prefixes visited
};

class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All proofs with code <= budget, in increasing code order. Throws
// SearchLimitExceeded when the search space exceeds the limits.
std::vector<Theorem> enumerate_theorems(const Theory& t, const GodelCode& budget,
                                        const EnumerationLimits& limits = {});

struct SemiResult {
  bool proved = false;
  GodelCode code;  // least proof code when proved
};

// Least d <= budget with dem(d, code(f)). Searches proof prefixes by branch
// and bound; a search that runs out of limits answers unknown.
SemiResult semidecide_theorem(const Theory& t, const Formula& f, const GodelCode& budget,
                              const EnumerationLimits& limits = {});

// One formula per line; blank lines and '#' comments are skipped.
std::vector<Formula> parse_derivation(std::string_view text, syntax::Signature sig);

}  // namespace metawb::hilbert
