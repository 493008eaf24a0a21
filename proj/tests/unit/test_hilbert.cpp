#include <doctest.h>

#include <sstream>

#include "../support/gen.hpp"
#include "metawb/hilbert.hpp"

using namespace metawb;
using namespace metawb::hilbert;

namespace {
Formula P(const char* s) { return syntax::parse_formula(s); }

struct Entry {
  std::string file, theory;
  bool valid;
};

std::vector<Entry> manifest() {
  std::istringstream in(gen::slurp(gen::corpus("hilbert/MANIFEST")));
  std::vector<Entry> out;
  std::string file, theory, verdict;
  while (in >> file) {
    if (file[0] == '#') {
      std::getline(in, file);
      continue;
    }
    in >> theory >> verdict;
    out.push_back({file, theory, verdict == "valid"});
  }
  return out;
}

std::vector<Formula> load(const Entry& e) {
  auto sig = e.theory == "zf" ? syntax::Signature::set_theory : syntax::Signature::arithmetic;
  return parse_derivation(gen::slurp(gen::corpus("hilbert/" + e.file)), sig);
}
}  // namespace

TEST_CASE("logical axioms") {
  CHECK(is_logical_axiom(P("0 = 0 \\/ ~(0 = 0)")) == 1);
  CHECK(is_logical_axiom(P("x0 = x0")) == 3);
  CHECK_FALSE(is_logical_axiom(P("0 = S(0)")));
  CHECK(is_logical_axiom(P("0 = 0 -> exists x1. x1 = x1")) == 2);
  CHECK(is_logical_axiom(P("x0 = x1 -> S(x0) = S(x1)")) == 4);
  CHECK(is_logical_axiom(P("(x0 = x1 /\\ x2 = x3) -> (x0 < x2 -> x1 < x3)")) == 5);
}

TEST_CASE("theory axioms") {
  CHECK(is_axiom_of(peano(), P("forall x0. x0 + 0 = x0")));
  CHECK(is_axiom_of(peano(), P("x0 * 0 = 0")));
  CHECK_FALSE(is_axiom_of(presburger(), P("x0 * 0 = 0")));
  CHECK(is_axiom_of(peano(), P("(0 = 0 /\\ forall x1. (x1 = x1 -> S(x1) = S(x1))) -> forall x0. x0 = x0")));
  CHECK_FALSE(is_axiom_of(pure_logic(), P("forall x0. x0 + 0 = x0")));
}

TEST_CASE("derivation examples") {
  CHECK(check_derivation(pure_logic(), {P("x0 = x0")}).valid);
  CHECK(check_derivation(pure_logic(), {P("0 = 0 \\/ ~(0 = 0)"), P("~(0 = 0) \\/ (0 = 0 \\/ ~(0 = 0))")}).valid);
  auto bad = check_derivation(pure_logic(), {P("0 = S(0)")});
  CHECK_FALSE(bad.valid);
  CHECK(bad.line == 0);
  CHECK(bad.reason == "not-an-axiom");
}

TEST_CASE("corpus verdicts") {
  auto entries = manifest();
  std::size_t valid = 0, invalid = 0;
  for (const auto& e : entries) {
    CAPTURE(e.file);
    auto r = check_derivation(theory_by_name(e.theory), load(e));
    CHECK(r.valid == e.valid);
    (e.valid ? valid : invalid)++;
  }
  CHECK(valid >= 15);
  CHECK(invalid >= 30);
}

TEST_CASE("replacing any line of a valid derivation by 0 = S(0) is rejected") {
  for (const auto& e : manifest()) {
    if (!e.valid) continue;
    auto lines = load(e);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto m = lines;
      m[i] = P("0 = S(0)");
      CAPTURE(e.file);
      CAPTURE(i);
      CHECK_FALSE(check_derivation(theory_by_name(e.theory), m).valid);
    }
  }
}

TEST_CASE("dem matches check_derivation plus the last-line test") {
  for (const auto& e : manifest()) {
    if (e.theory == "zf") continue;  // membership has no code
    auto lines = load(e);
    auto d = godel::encode_proof(lines);
    auto t = theory_by_name(e.theory);
    CAPTURE(e.file);
    CHECK(dem(d, godel::encode_formula(lines.back()), t) == e.valid);
    CHECK_FALSE(dem(d, godel::encode_formula(P("0 = S(0)")), t));
  }
  CHECK_FALSE(dem(godel::GodelCode(6), godel::encode_formula(P("0 = 0")), pure_logic()));
}

TEST_CASE("enumeration equals the definitional scan for small budgets") {
  const unsigned budget = 200'000;
  std::vector<std::string> scan;
  for (unsigned d = 1; d <= budget; ++d) {
    try {
      auto lines = godel::decode_proof(godel::GodelCode(d));
      if (check_derivation(peano(), lines).valid) scan.push_back(std::to_string(d));
    } catch (const std::invalid_argument&) {
    }
  }
  std::vector<std::string> listed;
  for (const auto& t : enumerate_theorems(peano(), godel::GodelCode(budget))) listed.push_back(t.code.to_string());
  CHECK(listed == scan);
}

TEST_CASE("enumeration reaches the reflexivity proof") {
  auto f = P("x0 = x0");
  auto d = godel::encode_proof({f});
  auto ts = enumerate_theorems(pure_logic(), d);
  REQUIRE_FALSE(ts.empty());
  CHECK(ts.back().code == d);
  CHECK(ts.back().formula == f);
  for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i - 1].code < ts[i].code);
}

TEST_CASE("semi-decision") {
  auto f = P("0 = 0 \\/ ~(0 = 0)");
  auto d = godel::encode_proof({f});
  auto r = semidecide_theorem(pure_logic(), f, d);
  REQUIRE(r.proved);
  CHECK(r.code == d);
  CHECK_FALSE(semidecide_theorem(pure_logic(), P("0 = S(0)"), d).proved);
  CHECK_FALSE(semidecide_theorem(pure_logic(), f, godel::GodelCode(0)).proved);
  // Least-index stability at a larger budget.
  auto bigger = godel::encode_proof({P("x9 = x9")});
  auto r2 = semidecide_theorem(pure_logic(), f, bigger);
  REQUIRE(r2.proved);
  CHECK(r2.code == d);
}
