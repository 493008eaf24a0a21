#include "metawb/lk.hpp"

#include <algorithm>
#include <functional>

namespace metawb::lk {

using FK = Formula::Kind;

namespace {

bool same(const Formula& a, const Formula& b) { return syntax::alpha_equal(a, b); }

bool same_list(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}


void need(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<Formula> drop_last(std::vector<Formula> v) {
  need(!v.empty(), "rule needs a nonempty antecedent");
  v.pop_back();
  return v;
}

std::vector<Formula> drop_first(const std::vector<Formula>& v) {
  need(!v.empty(), "rule needs a nonempty succedent");
  return std::vector<Formula>(v.begin() + 1, v.end());
}

std::vector<Formula> cat(std::vector<Formula> a, const std::vector<Formula>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Formula> front(const Formula& f, const std::vector<Formula>& rest) {
  std::vector<Formula> out{f};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

const Formula& need_principal(const std::optional<Formula>& p, FK kind, const std::string& rule) {
  need(p.has_value(), rule + ": principal formula required");
  need(p->kind() == kind, rule + ": principal formula has the wrong connective");
  return *p;
}

Formula instance(const Formula& q, const Term& t) {
  return syntax::substitute(q.sub(), q.bound(), t);
}

}  // namespace

bool alpha_equal(const Sequent& a, const Sequent& b) {
  return same_list(a.ante, b.ante) && same_list(a.succ, b.succ);
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.ante.size(); ++i) {
    if (i) out += ", ";
    out += syntax::to_string(s.ante[i]);
  }
  out += s.ante.empty() ? "|-" : " |-";
  for (std::size_t i = 0; i < s.succ.size(); ++i) out += (i ? ", " : " ") + syntax::to_string(s.succ[i]);
  return out;
}

Sequent parse_sequent(std::string_view text, syntax::Signature sig) {
  auto turnstile = text.find("|-");
  if (turnstile == std::string_view::npos) throw syntax::ParseError(0, "sequent needs '|-'");
  auto side = [&](std::string_view part, std::size_t offset) {
    std::vector<Formula> out;
    if (part.find_first_not_of(" \t\r\n") == std::string_view::npos) return out;
    std::size_t start = 0;
    for (;;) {
      auto comma = part.find(',', start);
      auto piece = part.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      try {
        out.push_back(syntax::parse_formula(piece, sig));
      } catch (const syntax::ParseError& e) {
        throw syntax::ParseError(offset + start + e.position(), e.message());
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  };
  return {side(text.substr(0, turnstile), 0), side(text.substr(turnstile + 2), turnstile + 2)};
}

std::string rule_tag(Rule r) {
  switch (r) {
    case Rule::Axiom: return "Axiom";
    case Rule::dA: return "dA";
    case Rule::gA: return "gA";
    case Rule::dE: return "dE";
    case Rule::gE: return "gE";
    case Rule::dC: return "dC";
    case Rule::gC: return "gC";
    case Rule::dAnd: return "d&";
    case Rule::g1And: return "g1&";
    case Rule::g2And: return "g2&";
    case Rule::d1Or: return "d1v";
    case Rule::d2Or: return "d2v";
    case Rule::gOr: return "gv";
    case Rule::dImp: return "d=>";
    case Rule::gImp: return "g=>";
    case Rule::dNot: return "d~";
    case Rule::gNot: return "g~";
    case Rule::dForall: return "dforall";
    case Rule::gForall: return "gforall";
    case Rule::dExists: return "dexists";
    case Rule::gExists: return "gexists";
    case Rule::Cut: return "Cut";
  }
  return "?";
}

std::optional<Rule> rule_from_tag(std::string_view tag) {
  for (Rule r : kAllRules)
    if (rule_tag(r) == tag) return r;
  return std::nullopt;
}

std::size_t arity(Rule r) {
  switch (r) {
    case Rule::Axiom: return 0;
    case Rule::dAnd:
    case Rule::gOr:
    case Rule::gImp:
    case Rule::Cut: return 2;
    default: return 1;
  }
}

bool is_structural(Rule r) {
  switch (r) {
    case Rule::dA:
    case Rule::gA:
    case Rule::dE:
    case Rule::gE:
    case Rule::dC:
    case Rule::gC: return true;
    default: return false;
  }
}

LKProof make_node(Rule rule, Sequent conclusion, RuleData data, std::vector<LKProof> premises) {
  return std::make_shared<const LKNode>(
      LKNode{rule, std::move(conclusion), std::move(data), std::move(premises)});
}

Sequent conclude(Rule rule, const RuleData& data, const std::vector<Sequent>& prem,
                 const std::optional<Formula>& principal) {
  const std::string name = rule_tag(rule);
  need(prem.size() == arity(rule), name + ": expected " + std::to_string(arity(rule)) +
                                       " premise(s), got " + std::to_string(prem.size()));
  auto succ_front = [&](std::size_t i) -> const Formula& {
    need(!prem[i].succ.empty(), name + ": premise " + std::to_string(i) + " has an empty succedent");
    return prem[i].succ.front();
  };
  auto ante_back = [&](std::size_t i) -> const Formula& {
    need(!prem[i].ante.empty(), name + ": premise " + std::to_string(i) + " has an empty antecedent");
    return prem[i].ante.back();
  };
  auto eigen_ok = [&](const Sequent& s) {
    need(data.eigen.has_value(), name + ": eigenvariable required");
    for (const auto& side : {&s.ante, &s.succ})
      for (const auto& f : *side)
        need(!syntax::occurs_free(*data.eigen, f),
             name + ": eigenvariable x" + std::to_string(data.eigen->index) +
                 " is free in the conclusion");
    return s;
  };

  switch (rule) {
    case Rule::Axiom: {
      need(principal.has_value(), "Axiom: formula required");
      return {{*principal}, {*principal}};
    }
    case Rule::dA:
      need(principal.has_value(), "dA: weakened formula required");
      return {prem[0].ante, front(*principal, prem[0].succ)};
    case Rule::gA:
      need(principal.has_value(), "gA: weakened formula required");
      return {cat(prem[0].ante, {*principal}), prem[0].succ};
    case Rule::dE: {
      Sequent s = prem[0];
      need(data.pos + 1 < s.succ.size(), "dE: exchange position out of range");
      std::swap(s.succ[data.pos], s.succ[data.pos + 1]);
      return s;
    }
    case Rule::gE: {
      Sequent s = prem[0];
      need(data.pos + 1 < s.ante.size(), "gE: exchange position out of range");
      std::swap(s.ante[data.pos], s.ante[data.pos + 1]);
      return s;
    }
    case Rule::dC:
      need(prem[0].succ.size() >= 2 && same(prem[0].succ[0], prem[0].succ[1]),
           "dC: succedent does not start with two copies of a formula");
      return {prem[0].ante, drop_first(prem[0].succ)};
    case Rule::gC: {
      const auto& a = prem[0].ante;
      need(a.size() >= 2 && same(a[a.size() - 1], a[a.size() - 2]),
           "gC: antecedent does not end with two copies of a formula");
      return {drop_last(a), prem[0].succ};
    }
    case Rule::dAnd: {
      Formula c = Formula::conj(succ_front(0), succ_front(1));
      return {cat(prem[0].ante, prem[1].ante),
              cat(front(c, drop_first(prem[0].succ)), drop_first(prem[1].succ))};
    }
    case Rule::g1And:
    case Rule::g2And: {
      const Formula& p = need_principal(principal, FK::And, name);
      const Formula& part = rule == Rule::g1And ? p.sub() : p.right();
      need(same(part, ante_back(0)), name + ": premise does not end with the conjunct");
      return {cat(drop_last(prem[0].ante), {p}), prem[0].succ};
    }
    case Rule::d1Or:
    case Rule::d2Or: {
      const Formula& p = need_principal(principal, FK::Or, name);
      const Formula& part = rule == Rule::d1Or ? p.sub() : p.right();
      need(same(part, succ_front(0)), name + ": premise does not start with the disjunct");
      return {prem[0].ante, front(p, drop_first(prem[0].succ))};
    }
    case Rule::gOr: {
      Formula d = Formula::disj(ante_back(0), ante_back(1));
      return {cat(cat(drop_last(prem[0].ante), drop_last(prem[1].ante)), {d}),
              cat(prem[0].succ, prem[1].succ)};
    }
    case Rule::dImp: {
      Formula i = Formula::implies(ante_back(0), succ_front(0));
      return {drop_last(prem[0].ante), front(i, drop_first(prem[0].succ))};
    }
    case Rule::gImp: {
      Formula i = Formula::implies(succ_front(0), ante_back(1));
      return {cat(cat(prem[0].ante, drop_last(prem[1].ante)), {i}),
              cat(drop_first(prem[0].succ), prem[1].succ)};
    }
    case Rule::dNot:
      return {drop_last(prem[0].ante), front(Formula::negation(ante_back(0)), prem[0].succ)};
    case Rule::gNot:
      return {cat(prem[0].ante, {Formula::negation(succ_front(0))}), drop_first(prem[0].succ)};
    case Rule::dForall:
    case Rule::dExists: {
      const Formula& p = need_principal(principal, rule == Rule::dForall ? FK::Forall : FK::Exists, name);
      Term t = Term::zero();
      if (rule == Rule::dForall) {
        need(data.eigen.has_value(), name + ": eigenvariable required");
        t = Term::var(*data.eigen);
      } else {
        need(data.term.has_value(), name + ": term required");
        t = *data.term;
      }
      need(same(instance(p, t), succ_front(0)), name + ": premise does not start with the instance");
      Sequent s{prem[0].ante, front(p, drop_first(prem[0].succ))};
      return rule == Rule::dForall ? eigen_ok(s) : s;
    }
    case Rule::gForall:
    case Rule::gExists: {
      const Formula& p = need_principal(principal, rule == Rule::gForall ? FK::Forall : FK::Exists, name);
      Term t = Term::zero();
      if (rule == Rule::gExists) {
        need(data.eigen.has_value(), name + ": eigenvariable required");
        t = Term::var(*data.eigen);
      } else {
        need(data.term.has_value(), name + ": term required");
        t = *data.term;
      }
      need(same(instance(p, t), ante_back(0)), name + ": premise does not end with the instance");
      Sequent s{cat(drop_last(prem[0].ante), {p}), prem[0].succ};
      return rule == Rule::gExists ? eigen_ok(s) : s;
    }
    case Rule::Cut: {
      const Formula& a = succ_front(0);
      need(same(a, ante_back(1)), "Cut: cut formulas differ");
      return {cat(prem[0].ante, drop_last(prem[1].ante)), cat(drop_first(prem[0].succ), prem[1].succ)};
    }
  }
  throw std::invalid_argument("unknown rule");
}

LKProof infer(Rule rule, std::vector<LKProof> premises, RuleData data,
              const std::optional<Formula>& principal) {
  std::vector<Sequent> ps;
  for (const auto& p : premises) ps.push_back(p->conclusion);
  Sequent c = conclude(rule, data, ps, principal);
  return make_node(rule, std::move(c), std::move(data), std::move(premises));
}

LKProof axiom(const Formula& a) { return make_node(Rule::Axiom, {{a}, {a}}, {}, {}); }

namespace {

bool right_rule(Rule r) {
  switch (r) {
    case Rule::dA:
    case Rule::dAnd:
    case Rule::d1Or:
    case Rule::d2Or:
    case Rule::dImp:
    case Rule::dNot:
    case Rule::dForall:
    case Rule::dExists: return true;
    default: return false;
  }
}

bool left_rule(Rule r) {
  switch (r) {
    case Rule::gA:
    case Rule::g1And:
    case Rule::g2And:
    case Rule::gOr:
    case Rule::gImp:
    case Rule::gNot:
    case Rule::gForall:
    case Rule::gExists: return true;
    default: return false;
  }
}

std::optional<std::string> check_node(const LKNode& n) {
  if (n.premises.size() != arity(n.rule))
    return rule_tag(n.rule) + ": expected " + std::to_string(arity(n.rule)) + " premise(s), got " +
           std::to_string(n.premises.size());
  const Sequent& c = n.conclusion;
  if (n.rule == Rule::Axiom) {
    if (c.ante.size() != 1 || c.succ.size() != 1 || !same(c.ante[0], c.succ[0]))
      return std::string("Axiom: conclusion is not of the form A |- A");
    return std::nullopt;
  }
  std::optional<Formula> principal;
  if (right_rule(n.rule)) {
    if (c.succ.empty()) return rule_tag(n.rule) + ": conclusion has an empty succedent";
    principal = c.succ.front();
  } else if (left_rule(n.rule)) {
    if (c.ante.empty()) return rule_tag(n.rule) + ": conclusion has an empty antecedent";
    principal = c.ante.back();
  }
  std::vector<Sequent> ps;
  for (const auto& p : n.premises) ps.push_back(p->conclusion);
  try {
    Sequent expect = conclude(n.rule, n.data, ps, principal);
    if (!alpha_equal(expect, c))
      return rule_tag(n.rule) + ": conclusion should be " + to_string(expect);
  } catch (const std::invalid_argument& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

bool check_rec(const LKProof& p, std::vector<std::size_t>& path, CheckResult& out) {
  for (std::size_t i = 0; i < p->premises.size(); ++i) {
    path.push_back(i);
    if (!check_rec(p->premises[i], path, out)) return false;
    path.pop_back();
  }
  if (auto why = check_node(*p)) {
    out.path = path;
    out.reason = *why;
    return false;
  }
  return true;
}

}  // namespace

CheckResult check_proof(const LKProof& p) {
  CheckResult r;
  if (!p) {
    r.reason = "empty proof";
    return r;
  }
  std::vector<std::size_t> path;
  r.valid = check_rec(p, path, r);
  return r;
}

std::size_t node_count(const LKProof& p) {
  std::size_t n = 1;
  for (const auto& q : p->premises) n += node_count(q);
  return n;
}

std::size_t cut_count(const LKProof& p) {
  std::size_t n = p->rule == Rule::Cut ? 1 : 0;
  for (const auto& q : p->premises) n += cut_count(q);
  return n;
}

std::size_t depth(const LKProof& p) {
  std::size_t d = 0;
  for (const auto& q : p->premises) d = std::max(d, depth(q));
  return d + 1;
}

// ---------------------------------------------------------------------------
// Subformulas

namespace {

// Some subformula of `pattern` (a formula whose variables in `wild` stand
// for arbitrary terms) matches g.
bool sub_match(const Formula& g, const Formula& pattern, const std::set<VarId>& wild) {
  std::map<VarId, Term> b;
  if (wild.empty() ? syntax::alpha_equal(pattern, g) : syntax::match_formula(pattern, g, wild, b))
    return true;
  if (pattern.is_atom()) return false;
  if (pattern.kind() == FK::Not) return sub_match(g, pattern.sub(), wild);
  if (pattern.is_quantifier()) {
    std::set<VarId> inner = wild;
    inner.insert(pattern.bound());
    return sub_match(g, pattern.sub(), inner);
  }
  return sub_match(g, pattern.sub(), wild) || sub_match(g, pattern.right(), wild);
}

}  // namespace

bool is_subformula(const Formula& g, const Formula& f) { return sub_match(g, f, {}); }

bool verify_subformula_property(const LKProof& p) {
  if (!check_proof(p).valid)
    throw std::invalid_argument("verify_subformula_property: proof does not check");
  std::vector<Formula> end = p->conclusion.ante;
  end.insert(end.end(), p->conclusion.succ.begin(), p->conclusion.succ.end());
  std::function<bool(const LKProof&)> walk = [&](const LKProof& q) {
    for (const auto& side : {&q->conclusion.ante, &q->conclusion.succ})
      for (const auto& f : *side) {
        bool ok = std::any_of(end.begin(), end.end(), [&](const Formula& e) { return is_subformula(f, e); });
        if (!ok) return false;
      }
    return std::all_of(q->premises.begin(), q->premises.end(), walk);
  };
  return walk(p);
}

// ---------------------------------------------------------------------------
// Substitution through a proof

namespace {

bool term_mentions(const Term& t, VarId v) { return syntax::free_vars(t).count(v) > 0; }

long proof_max_var(const LKProof& p) {
  long m = -1;
  for (const auto& side : {&p->conclusion.ante, &p->conclusion.succ})
    for (const auto& f : *side) m = std::max(m, syntax::max_var_index(f));
  if (p->data.term) m = std::max(m, syntax::max_var_index(*p->data.term));
  if (p->data.eigen) m = std::max(m, static_cast<long>(p->data.eigen->index));
  for (const auto& q : p->premises) m = std::max(m, proof_max_var(q));
  return m;
}

}  // namespace

LKProof subst_proof_fresh(const LKProof& p, VarId v, const Term& t, unsigned& fresh) {
  if (p->data.eigen && *p->data.eigen == v) return p;
  std::vector<LKProof> premises = p->premises;
  RuleData data = p->data;
  if (data.eigen && term_mentions(t, *data.eigen)) {
    VarId z{fresh++};
    for (auto& q : premises) q = subst_proof_fresh(q, *data.eigen, Term::var(z), fresh);
    data.eigen = z;
  }
  for (auto& q : premises) q = subst_proof_fresh(q, v, t, fresh);
  if (data.term) data.term = syntax::substitute(*data.term, v, t);
  Sequent c = p->conclusion;
  for (auto* side : {&c.ante, &c.succ})
    for (auto& f : *side) f = syntax::substitute(f, v, t);
  return make_node(p->rule, std::move(c), std::move(data), std::move(premises));
}

unsigned first_fresh(const LKProof& p, const Term& t) {
  long m = std::max(proof_max_var(p), syntax::max_var_index(t));
  return static_cast<unsigned>(m + 1);
}

LKProof subst_proof(const LKProof& p, VarId v, const Term& t) {
  unsigned fresh = std::max(first_fresh(p, t), v.index + 1);
  return subst_proof_fresh(p, v, t, fresh);
}

}  // namespace metawb::lk
