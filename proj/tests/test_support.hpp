#pragma once

#include <algorithm>
#include <vector>

#include "orbits/cnf.hpp"
#include "orbits/kb_model.hpp"

namespace orbits::testing {

// Four facts alpha=0, beta=1, gamma=2, delta=3 with conflicts
// {alpha,beta}, {gamma,delta}, {alpha,delta}, {beta,gamma}.
inline constexpr FactId kA = 0, kB = 1, kG = 2, kD = 3;

inline ConflictSet example_conflicts() {
  ConflictSet c;
  c.add(kA, kB);
  c.add(kG, kD);
  c.add(kA, kD);
  c.add(kB, kG);
  c.normalize();
  return c;
}

inline PriorityRelation example_priority() {
  PriorityRelation p;
  p.add(kA, kB);
  p.add(kG, kD);
  p.normalize();
  return p;
}

inline PrioritizedInstance example_instance() {
  return PrioritizedInstance::with_dense_facts(4, example_conflicts(), example_priority(),
                                               {{"q(a)", {{kA}, {kB}}}});
}

inline std::vector<KeyClause> sorted_clauses(std::vector<KeyClause> clauses) {
  for (KeyClause& c : clauses) std::sort(c.begin(), c.end());
  std::sort(clauses.begin(), clauses.end());
  return clauses;
}

inline KeyLit x(FactId f) { return pos(VarKey::fact(f)); }
inline KeyLit nx(FactId f) { return neg(VarKey::fact(f)); }

// Formula over plain variables 1..n (interned as facts 0..n-1).
inline CnfFormula raw_formula(int n, const std::vector<Clause>& clauses) {
  CnfFormula f;
  for (int v = 0; v < n; ++v) f.registry.intern(VarKey::fact(static_cast<FactId>(v)));
  for (const Clause& c : clauses) f.hard.push_back(c);
  return f;
}

}  // namespace orbits::testing
