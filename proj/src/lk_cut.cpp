// Cut elimination by Gentzen's mix. mix(p1, p2, M) removes every occurrence
// of M from the succedent of p1 and the antecedent of p2 at once; its result
// proves a sequent whose antecedent lies in Γ ∪ (Π \ M) and whose succedent
// lies in (Δ \ M) ∪ Λ, read as sets. adjust() then rebuilds the exact
// sequent with weakening, exchange and contraction.

#include <algorithm>

#include "metawb/lk.hpp"

namespace metawb::lk {

LKProof subst_proof_fresh(const LKProof& p, VarId v, const Term& t, unsigned& fresh);
unsigned first_fresh(const LKProof& p, const Term& t);

namespace {

using FK = Formula::Kind;
using List = std::vector<Formula>;

bool same(const Formula& a, const Formula& b) { return syntax::alpha_equal(a, b); }

bool contains(const List& l, const Formula& f) {
  return std::any_of(l.begin(), l.end(), [&](const Formula& g) { return same(f, g); });
}

bool right_logical(Rule r) {
  switch (r) {
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

const Formula& principal_of(const LKNode& n) {
  return right_logical(n.rule) ? n.conclusion.succ.front() : n.conclusion.ante.back();
}

// Formulas of premise i that the rule consumes.
struct Actives {
  List ante;
  List succ;
};

Actives actives(const LKNode& n, std::size_t i) {
  const Sequent& s = n.premises[i]->conclusion;
  switch (n.rule) {
    case Rule::dAnd:
    case Rule::d1Or:
    case Rule::d2Or:
    case Rule::dForall:
    case Rule::dExists:
    case Rule::gNot: return {{}, {s.succ.front()}};
    case Rule::g1And:
    case Rule::g2And:
    case Rule::gOr:
    case Rule::gForall:
    case Rule::gExists:
    case Rule::dNot: return {{s.ante.back()}, {}};
    case Rule::dImp: return {{s.ante.back()}, {s.succ.front()}};
    case Rule::gImp:
      if (i == 0) return {{}, {s.succ.front()}};
      return {{s.ante.back()}, {}};
    default: throw std::logic_error("actives: not a logical rule");
  }
}

List dedupe_without(const List& l, const List& drop) {
  List out;
  for (const auto& f : l)
    if (!contains(drop, f) && !contains(out, f)) out.push_back(f);
  return out;
}

std::set<VarId> sequent_vars(const Sequent& s) {
  std::set<VarId> out;
  for (const auto* side : {&s.ante, &s.succ})
    for (const auto& f : *side) {
      auto fv = syntax::free_vars(f);
      out.insert(fv.begin(), fv.end());
    }
  return out;
}

class Eliminator {
 public:
  Eliminator(unsigned fresh, const CutOptions& opts, CutStats& stats)
      : fresh_(fresh), opts_(opts), stats_(stats) {}

  LKProof run(const LKProof& p) {
    if (cut_count(p) == 0) return p;
    std::vector<LKProof> premises;
    for (const auto& q : p->premises) premises.push_back(run(q));
    if (p->rule != Rule::Cut) return node(p->rule, p->conclusion, p->data, std::move(premises));
    const Formula a = premises[0]->conclusion.succ.front();
    return adjust(mix(premises[0], premises[1], a), p->conclusion);
  }

 private:
  unsigned fresh_;
  const CutOptions& opts_;
  CutStats& stats_;

  void tick() {
    if (++stats_.nodes_built > opts_.max_nodes)
      throw CutBudgetExceeded("cut elimination exceeded " + std::to_string(opts_.max_nodes) + " nodes",
                              stats_);
  }

  LKProof node(Rule r, Sequent c, RuleData d, std::vector<LKProof> ps) {
    tick();
    return make_node(r, std::move(c), std::move(d), std::move(ps));
  }

  LKProof apply(Rule r, std::vector<LKProof> ps, RuleData d = {},
                const std::optional<Formula>& principal = std::nullopt) {
    tick();
    return infer(r, std::move(ps), std::move(d), principal);
  }

  // --- adjust --------------------------------------------------------------

  // Rebuilds p so that it proves exactly `target`. Every formula of p's
  // conclusion must occur in the matching side of the target.
  LKProof adjust(LKProof p, const Sequent& target) {
    auto ante = [&]() -> const List& { return p->conclusion.ante; };
    auto succ = [&]() -> const List& { return p->conclusion.succ; };
    auto gE = [&](std::size_t k) { p = apply(Rule::gE, {p}, RuleData{k, {}, {}}); };
    auto dE = [&](std::size_t k) { p = apply(Rule::dE, {p}, RuleData{k, {}, {}}); };

    // Contract duplicates in the antecedent: move the pair to the end.
    for (bool again = true; again;) {
      again = false;
      for (std::size_t i = 0; i < ante().size() && !again; ++i)
        for (std::size_t j = i + 1; j < ante().size() && !again; ++j) {
          if (!same(ante()[i], ante()[j])) continue;
          for (std::size_t k = j; k + 1 < ante().size(); ++k) gE(k);
          for (std::size_t k = i; k + 2 < ante().size(); ++k) gE(k);
          p = apply(Rule::gC, {p});
          again = true;
        }
    }
    // Same for the succedent, at the front.
    for (bool again = true; again;) {
      again = false;
      for (std::size_t i = 0; i < succ().size() && !again; ++i)
        for (std::size_t j = i + 1; j < succ().size() && !again; ++j) {
          if (!same(succ()[i], succ()[j])) continue;
          for (std::size_t k = i; k > 0; --k) dE(k - 1);
          for (std::size_t k = j; k > 1; --k) dE(k - 1);
          p = apply(Rule::dC, {p});
          again = true;
        }
    }
    for (const auto& f : ante())
      if (!contains(target.ante, f)) throw std::logic_error("adjust: stray antecedent formula");
    for (const auto& f : succ())
      if (!contains(target.succ, f)) throw std::logic_error("adjust: stray succedent formula");

    // Weaken in what is missing, one target occurrence per present formula.
    {
      std::vector<bool> used(ante().size(), false);
      List missing;
      for (const auto& f : target.ante) {
        bool hit = false;
        for (std::size_t k = 0; k < ante().size() && !hit; ++k)
          if (!used[k] && same(ante()[k], f)) used[k] = hit = true;
        if (!hit) missing.push_back(f);
      }
      for (const auto& f : missing) p = apply(Rule::gA, {p}, {}, f);
    }
    {
      std::vector<bool> used(succ().size(), false);
      List missing;
      for (const auto& f : target.succ) {
        bool hit = false;
        for (std::size_t k = 0; k < succ().size() && !hit; ++k)
          if (!used[k] && same(succ()[k], f)) used[k] = hit = true;
        if (!hit) missing.push_back(f);
      }
      for (const auto& f : missing) p = apply(Rule::dA, {p}, {}, f);
    }

    // Bubble into target order.
    for (std::size_t i = 0; i < target.ante.size(); ++i) {
      std::size_t j = i;
      while (!same(ante()[j], target.ante[i])) ++j;
      for (; j > i; --j) gE(j - 1);
    }
    for (std::size_t i = 0; i < target.succ.size(); ++i) {
      std::size_t j = i;
      while (!same(succ()[j], target.succ[i])) ++j;
      for (; j > i; --j) dE(j - 1);
    }
    return node(p->rule, target, p->data, p->premises);
  }

  // --- mix -----------------------------------------------------------------

  LKProof mix(const LKProof& p1, const LKProof& p2, const Formula& m) {
    tick();
    const Sequent& s1 = p1->conclusion;
    const Sequent& s2 = p2->conclusion;
    if (!contains(s1.succ, m)) return p1;
    if (!contains(s2.ante, m)) return p2;
    if (contains(s1.ante, m)) return p2;
    if (contains(s2.succ, m)) return p1;
    if (p1->rule == Rule::Cut || p2->rule == Rule::Cut) throw std::logic_error("mix: cut in premise");
    if (is_structural(p2->rule)) return mix(p1, p2->premises[0], m);
    if (is_structural(p1->rule)) return mix(p1->premises[0], p2, m);

    bool m_above_right = false;
    for (const auto& q : p2->premises) m_above_right |= contains(q->conclusion.ante, m);
    if (!same(principal_of(*p2), m) || m_above_right) return reduce_right(p1, p2, m);

    bool m_above_left = false;
    for (const auto& q : p1->premises) m_above_left |= contains(q->conclusion.succ, m);
    if (!same(principal_of(*p1), m) || m_above_left) return reduce_left(p1, p2, m);

    return reduce_principal(p1, p2, m);
  }

  // Context of the rebuilt premise followed/preceded by the rule's actives.
  LKProof reshape(const LKProof& q, const Actives& act) {
    Sequent target;
    target.ante = dedupe_without(q->conclusion.ante, act.ante);
    target.ante.insert(target.ante.end(), act.ante.begin(), act.ante.end());
    target.succ = act.succ;
    List rest = dedupe_without(q->conclusion.succ, act.succ);
    target.succ.insert(target.succ.end(), rest.begin(), rest.end());
    return adjust(q, target);
  }

  // Renames the eigenvariable of n when it clashes with `avoid`.
  void fresh_eigen(std::vector<LKProof>& premises, RuleData& data, const std::set<VarId>& avoid) {
    if (!data.eigen || !avoid.count(*data.eigen)) return;
    VarId z{fresh_++};
    premises[0] = subst_proof_fresh(premises[0], *data.eigen, Term::var(z), fresh_);
    data.eigen = z;
  }

  LKProof reduce_right(const LKProof& p1, const LKProof& p2, const Formula& m) {
    std::vector<LKProof> premises = p2->premises;
    RuleData data = p2->data;
    fresh_eigen(premises, data, sequent_vars(p1->conclusion));
    std::vector<LKProof> rebuilt;
    for (std::size_t i = 0; i < premises.size(); ++i) {
      Actives act;
      {
        LKNode probe{p2->rule, p2->conclusion, data, premises};
        act = actives(probe, i);
      }
      LKProof q = premises[i];
      if (contains(q->conclusion.ante, m)) q = mix(p1, q, m);
      rebuilt.push_back(reshape(q, act));
    }
    const Formula principal = principal_of(*p2);
    LKProof r = apply(p2->rule, std::move(rebuilt), data, principal);
    return same(principal, m) ? mix(p1, r, m) : r;
  }

  LKProof reduce_left(const LKProof& p1, const LKProof& p2, const Formula& m) {
    std::vector<LKProof> premises = p1->premises;
    RuleData data = p1->data;
    fresh_eigen(premises, data, sequent_vars(p2->conclusion));
    std::vector<LKProof> rebuilt;
    for (std::size_t i = 0; i < premises.size(); ++i) {
      Actives act;
      {
        LKNode probe{p1->rule, p1->conclusion, data, premises};
        act = actives(probe, i);
      }
      LKProof q = premises[i];
      if (contains(q->conclusion.succ, m)) q = mix(q, p2, m);
      rebuilt.push_back(reshape(q, act));
    }
    const Formula principal = principal_of(*p1);
    LKProof r = apply(p1->rule, std::move(rebuilt), data, principal);
    return same(principal, m) ? mix(r, p2, m) : r;
  }

  LKProof subst(const LKProof& p, VarId v, const Term& t) {
    fresh_ = std::max(fresh_, first_fresh(p, t));
    return subst_proof_fresh(p, v, t, fresh_);
  }

  LKProof reduce_principal(const LKProof& p1, const LKProof& p2, const Formula& m) {
    const Formula& left = principal_of(*p1);
    const Formula& right = principal_of(*p2);
    switch (m.kind()) {
      case FK::And:
        if (p2->rule == Rule::g1And) return mix(p1->premises[0], p2->premises[0], right.sub());
        return mix(p1->premises[1], p2->premises[0], right.right());
      case FK::Or:
        if (p1->rule == Rule::d1Or) return mix(p1->premises[0], p2->premises[0], left.sub());
        return mix(p1->premises[0], p2->premises[1], left.right());
      case FK::Implies: {
        LKProof inner = mix(p1->premises[0], p2->premises[1], left.right());
        return mix(p2->premises[0], inner, left.sub());
      }
      case FK::Not: return mix(p2->premises[0], p1->premises[0], left.sub());
      case FK::Forall: {
        const Term& t = *p2->data.term;
        LKProof s = subst(p1->premises[0], *p1->data.eigen, t);
        return mix(s, p2->premises[0], syntax::substitute(right.sub(), right.bound(), t));
      }
      case FK::Exists: {
        const Term& t = *p1->data.term;
        LKProof s = subst(p2->premises[0], *p2->data.eigen, t);
        return mix(p1->premises[0], s, syntax::substitute(left.sub(), left.bound(), t));
      }
      default: throw std::logic_error("mix: unexpected principal formula");
    }
  }
};

void collect(const LKProof& p, CutStats& st) {
  ++st.input_nodes;
  if (p->rule == Rule::Cut) {
    ++st.cuts;
    st.max_cut_degree = std::max(st.max_cut_degree, p->premises[0]->conclusion.succ.front().degree());
  }
  for (const auto& q : p->premises) collect(q, st);
}

}  // namespace

LKProof eliminate_cuts(const LKProof& p, const CutOptions& opts, CutStats& stats) {
  stats = {};
  collect(p, stats);
  Eliminator e(first_fresh(p, Term::zero()), opts, stats);
  return e.run(p);
}

LKProof eliminate_cuts(const LKProof& p, const CutOptions& opts) {
  CutStats stats;
  return eliminate_cuts(p, opts, stats);
}

}  // namespace metawb::lk
