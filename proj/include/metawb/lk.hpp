#pragma once

// Gentzen's sequent calculus LK: rule-labelled proof trees, checking,
// the subformula property and cut elimination.
//
// Conventions: a principal formula sits at the front of the succedent
// (right rules) or at the end of the antecedent (left rules); two-premise
// rules concatenate contexts Γ,Γ′ and Δ,Δ′. Formulas are compared up to
// renaming of bound variables.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metawb/syntax.hpp"

namespace metawb::lk {

using syntax::Formula;
using syntax::Term;
using syntax::VarId;

struct Sequent {
  std::vector<Formula> ante;
  std::vector<Formula> succ;
};

bool alpha_equal(const Sequent& a, const Sequent& b);
std::string to_string(const Sequent& s);
// "A, B |- C"; sides may be empty.
Sequent parse_sequent(std::string_view text, syntax::Signature sig = syntax::Signature::arithmetic);

enum class Rule {
  Axiom,
  dA, gA,          // weakening
  dE, gE,          // exchange at (pos, pos + 1)
  dC, gC,          // contraction
  dAnd, g1And, g2And,
  d1Or, d2Or, gOr,
  dImp, gImp,
  dNot, gNot,
  dForall, gForall,
  dExists, gExists,
  Cut,
};

inline constexpr Rule kAllRules[] = {
    Rule::Axiom, Rule::dA,    Rule::gA,    Rule::dE,      Rule::gE,      Rule::dC,
    Rule::gC,    Rule::dAnd,  Rule::g1And, Rule::g2And,   Rule::d1Or,    Rule::d2Or,
    Rule::gOr,   Rule::dImp,  Rule::gImp,  Rule::dNot,    Rule::gNot,    Rule::dForall,
    Rule::gForall, Rule::dExists, Rule::gExists, Rule::Cut};

// ASCII tags: Axiom dA gA dE gE dC gC d& g1& g2& d1v d2v gv d=> g=> d~ g~
// dforall gforall dexists gexists Cut
std::string rule_tag(Rule r);
std::optional<Rule> rule_from_tag(std::string_view tag);
std::size_t arity(Rule r);
bool is_structural(Rule r);  // weakening, exchange, contraction

struct RuleData {
  std::size_t pos = 0;           // exchange position
  std::optional<Term> term;      // t for gforall / dexists
  std::optional<VarId> eigen;    // eigenvariable for dforall / gexists
};

struct LKNode;
using LKProof = std::shared_ptr<const LKNode>;

struct LKNode {
  Rule rule;
  Sequent conclusion;
  RuleData data;
  std::vector<LKProof> premises;
};

LKProof make_node(Rule rule, Sequent conclusion, RuleData data, std::vector<LKProof> premises);

// The conclusion a rule yields from its premises. `principal` supplies what
// the premises cannot determine: the weakened formula, the full A & B or
// A \/ B, or the quantified formula. Throws std::invalid_argument when the
// premises do not have the required shape.
Sequent conclude(Rule rule, const RuleData& data, const std::vector<Sequent>& premises,
                 const std::optional<Formula>& principal = std::nullopt);
// make_node(rule, conclude(...), data, premises)
LKProof infer(Rule rule, std::vector<LKProof> premises, RuleData data = {},
              const std::optional<Formula>& principal = std::nullopt);
LKProof axiom(const Formula& a);

struct CheckResult {
  bool valid = false;
  std::vector<std::size_t> path;  // premise indices from the root
  std::string reason;
};

CheckResult check_proof(const LKProof& p);

std::size_t node_count(const LKProof& p);
std::size_t cut_count(const LKProof& p);
std::size_t depth(const LKProof& p);

bool is_subformula(const Formula& g, const Formula& f);
// Precondition: check_proof(p).valid; throws std::invalid_argument otherwise.
bool verify_subformula_property(const LKProof& p);

// Replaces free occurrences of v by t in every sequent of the proof,
// renaming clashing eigenvariables.
LKProof subst_proof(const LKProof& p, VarId v, const Term& t);

struct CutStats {
  std::size_t cuts = 0;
  std::size_t max_cut_degree = 0;
  std::size_t input_nodes = 0;
  std::size_t nodes_built = 0;
};

class CutBudgetExceeded : public std::runtime_error {
 public:
  CutBudgetExceeded(const std::string& what, CutStats stats)
      : std::runtime_error(what), stats(stats) {}
  CutStats stats;
};

struct CutOptions {
  std::size_t max_nodes = 5'000'000;  // nodes built during elimination
};

// Precondition: check_proof(p).valid. Returns a cut-free proof of the same
// end-sequent.
LKProof eliminate_cuts(const LKProof& p, const CutOptions& opts = {});
LKProof eliminate_cuts(const LKProof& p, const CutOptions& opts, CutStats& stats);

// s-expression file format:
//   (tag (conclusion "Γ |- Δ") (data (pos i) (term "t") (eigen xN)) premise*)
std::string print_proof(const LKProof& p);
// Throws syntax::ParseError on malformed input.
LKProof parse_proof(std::string_view text, syntax::Signature sig = syntax::Signature::arithmetic);

}  // namespace metawb::lk
