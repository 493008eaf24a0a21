#pragma once

// Random strictly descending walks through ordinal notations, shared by the
// unit tests and the acceptance runner.

#include "gen.hpp"
#include "metawb/ordinals.hpp"

namespace walk {

using metawb::ordinals::Ord;
using metawb::ordinals::OrdTerm;

// Lower one term's coefficient by one and drop everything after it.
inline Ord decrement(const Ord& o, std::size_t i) {
  std::vector<OrdTerm> ts(o.terms().begin(), o.terms().begin() + static_cast<std::ptrdiff_t>(i) + 1);
  if (ts.back().coef == 1)
    ts.pop_back();
  else
    ts.back().coef -= 1;
  return Ord::from_terms(std::move(ts));
}

inline Ord step(const Ord& o, gen::Rng& r) {
  if (r.below(3) == 0) return decrement(o, r.below(static_cast<unsigned>(o.terms().size())));
  if (o.is_successor()) return metawb::ordinals::predecessor(o);
  return metawb::ordinals::fundamental_sequence(o, r.below(4));
}

struct Result {
  bool reached_zero = false;
  bool always_below = true;
  std::uint64_t steps = 0;
};

inline Result descend(Ord o, gen::Rng& r, std::uint64_t max_steps) {
  Result res;
  while (!o.is_zero() && res.steps < max_steps) {
    auto next = step(o, r);
    if (!(next < o)) res.always_below = false;
    o = std::move(next);
    ++res.steps;
  }
  res.reached_zero = o.is_zero();
  return res;
}

}  // namespace walk
