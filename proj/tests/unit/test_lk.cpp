#include <doctest.h>

#include <filesystem>
#include <functional>

#include "../support/gen.hpp"
#include "metawb/lk.hpp"

using namespace metawb;
using namespace metawb::lk;

namespace {
Formula P(const char* s) { return syntax::parse_formula(s); }

std::vector<std::pair<std::string, LKProof>> corpus() {
  std::vector<std::pair<std::string, LKProof>> out;
  for (const auto& e : std::filesystem::directory_iterator(gen::corpus("lk")))
    if (e.path().extension() == ".lk")
      out.emplace_back(e.path().filename().string(), parse_proof(gen::slurp(e.path().string())));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

LKProof retag(const LKProof& p, const std::vector<std::size_t>& path, std::size_t d, Rule r) {
  if (d == path.size()) return make_node(r, p->conclusion, p->data, p->premises);
  auto ps = p->premises;
  ps[path[d]] = retag(ps[path[d]], path, d + 1, r);
  return make_node(p->rule, p->conclusion, p->data, ps);
}

void paths(const LKProof& p, std::vector<std::size_t> at, std::vector<std::vector<std::size_t>>& out) {
  out.push_back(at);
  for (std::size_t i = 0; i < p->premises.size(); ++i) {
    auto next = at;
    next.push_back(i);
    paths(p->premises[i], next, out);
  }
}

// ⊢ A ∨ ¬A for A = (0 = 0), built cut-free by hand.
LKProof excluded_middle() {
  auto a = P("0 = 0");
  auto ax = axiom(a);                                              // A ⊢ A
  auto neg = infer(Rule::dNot, {ax});                              // ⊢ ¬A, A
  auto ex = infer(Rule::dE, {neg}, RuleData{0, {}, {}});           // ⊢ A, ¬A
  auto or1 = infer(Rule::d1Or, {ex}, {}, P("0 = 0 \\/ ~(0 = 0)"));  // ⊢ A∨¬A, ¬A
  auto ex2 = infer(Rule::dE, {or1}, RuleData{0, {}, {}});          // ⊢ ¬A, A∨¬A
  auto or2 = infer(Rule::d2Or, {ex2}, {}, P("0 = 0 \\/ ~(0 = 0)"));
  return infer(Rule::dC, {or2});
}
}  // namespace

TEST_CASE("axioms and hand-built proofs") {
  CHECK(check_proof(axiom(P("0 = 0"))).valid);
  auto em = excluded_middle();
  CHECK(check_proof(em).valid);
  CHECK(alpha_equal(em->conclusion, parse_sequent("|- 0 = 0 \\/ ~(0 = 0)")));
  CHECK(cut_count(em) == 0);
  CHECK(verify_subformula_property(em));
}

TEST_CASE("eigenvariable condition") {
  // x0 = x0 ⊢ x0 = x0, then ∀x0 on the right while x0 is free on the left.
  auto ax = axiom(P("x0 = x0"));
  auto bad = make_node(Rule::dForall, parse_sequent("x0 = x0 |- forall x0. x0 = x0"), RuleData{0, {}, VarId{0}},
                       {ax});
  auto r = check_proof(bad);
  CHECK_FALSE(r.valid);
  CHECK(r.path.empty());
  CHECK(r.reason.find("eigen") != std::string::npos);
  CHECK_THROWS_AS(infer(Rule::dForall, {ax}, RuleData{0, {}, VarId{0}}, P("forall x0. x0 = x0")),
                  std::invalid_argument);
}

TEST_CASE("subformulas") {
  CHECK(is_subformula(P("0 = 0"), P("0 = 0 \\/ 0 < 0")));
  CHECK(is_subformula(P("S(0) = 0"), P("forall x0. x0 = 0")));
  CHECK_FALSE(is_subformula(P("0 < 0"), P("0 = 0")));
}

TEST_CASE("subformula relation is reflexive and transitive") {
  gen::Rng r(31);
  int chains = 0;
  for (int i = 0; i < 400; ++i) {
    auto f = gen::formula(r, 4, 2);
    CHECK(is_subformula(f, f));
    // Walk down twice through immediate subformulas.
    auto step = [&](const Formula& g) -> std::optional<Formula> {
      if (g.is_atom()) return std::nullopt;
      if (g.is_quantifier()) return syntax::substitute(g.sub(), g.bound(), gen::term(r, 1, 2));
      if (g.kind() == Formula::Kind::Not) return g.sub();
      return r.coin() ? g.sub() : g.right();
    };
    auto g = step(f);
    if (!g) continue;
    auto h = step(*g);
    if (!h) continue;
    CHECK(is_subformula(*g, f));
    CHECK(is_subformula(*h, *g));
    CHECK(is_subformula(*h, f));
    ++chains;
  }
  CHECK(chains > 100);
}

TEST_CASE("a cut on a foreign formula breaks the subformula property") {
  // 0 = 0 ⊢ 0 < S(0), 0 = 0 and 0 = 0, 0 < S(0) ⊢ 0 = 0 by weakening.
  auto l = infer(Rule::dA, {axiom(P("0 = 0"))}, {}, P("0 < S(0)"));
  auto rw = infer(Rule::gA, {axiom(P("0 = 0"))}, {}, P("0 < S(0)"));
  auto cut = infer(Rule::Cut, {l, rw});
  REQUIRE(check_proof(cut).valid);
  CHECK_FALSE(verify_subformula_property(cut));
  auto q = eliminate_cuts(cut);
  CHECK(check_proof(q).valid);
  CHECK(verify_subformula_property(q));
}

TEST_CASE("atomic cut between axioms reduces to the axiom") {
  auto p = parse_proof(gen::slurp(gen::corpus("lk/atomic_cut.lk")));
  auto q = eliminate_cuts(p);
  CHECK(q->rule == Rule::Axiom);
  CHECK(alpha_equal(q->conclusion, p->conclusion));
}

TEST_CASE("cut-free input is returned unchanged") {
  auto em = excluded_middle();
  CHECK(print_proof(eliminate_cuts(em)) == print_proof(em));
}

TEST_CASE("corpus: validity, elimination, subformula property, round trip") {
  auto all = corpus();
  CHECK(all.size() >= 12);
  for (const auto& [name, p] : all) {
    CAPTURE(name);
    REQUIRE(check_proof(p).valid);
    CHECK(node_count(p) <= 40);
    CHECK(print_proof(parse_proof(print_proof(p))) == print_proof(p));
    auto q = eliminate_cuts(p);
    CHECK(check_proof(q).valid);
    CHECK(cut_count(q) == 0);
    CHECK(alpha_equal(q->conclusion, p->conclusion));
    CHECK(verify_subformula_property(q));
  }
}

TEST_CASE("every single rule-tag mutation of a corpus proof is rejected") {
  for (const auto& [name, p] : corpus()) {
    std::vector<std::vector<std::size_t>> ps;
    paths(p, {}, ps);
    for (const auto& at : ps) {
      LKProof node = p;
      for (auto i : at) node = node->premises[i];
      for (Rule r : kAllRules) {
        if (r == node->rule) continue;
        CAPTURE(name);
        CAPTURE(rule_tag(r));
        CHECK_FALSE(check_proof(retag(p, at, 0, r)).valid);
      }
    }
  }
}

TEST_CASE("substitution into proofs keeps them valid") {
  for (const auto& [name, p] : corpus()) {
    CAPTURE(name);
    auto q = subst_proof(p, VarId{0}, syntax::parse_term("S(x1)"));
    CHECK(check_proof(q).valid);
  }
}

TEST_CASE("printer and reader") {
  auto em = excluded_middle();
  auto text = print_proof(em);
  CHECK(print_proof(parse_proof(text)) == text);
  CHECK_THROWS_AS(parse_proof("(Axiom (conclusion \"0 = 0 |- 0 = 0\")"), syntax::ParseError);
  CHECK_THROWS_AS(parse_proof("(Bogus (conclusion \"0 = 0 |- 0 = 0\"))"), syntax::ParseError);
}
