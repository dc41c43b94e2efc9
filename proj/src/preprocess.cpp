#include <algorithm>

#include "orbits/filters.hpp"

namespace orbits {

PrioritizedInstance remove_self_inconsistent(const PrioritizedInstance& instance,
                                             SelfInconsistencyReport* report) {
  const FactSet& removed = instance.conflicts().self_inconsistent;
  if (report) {
    report->removed_facts = removed;
    report->dropped_answers.clear();
  }
  if (removed.empty()) return instance;

  ConflictSet conflicts;
  for (const FactPair& p : instance.conflicts().pairs)
    if (!contains(removed, p.lo) && !contains(removed, p.hi)) conflicts.pairs.push_back(p);
  conflicts.self_inconsistent = removed;

  PriorityRelation priority;
  for (const PriorityEdge& e : instance.priority().edges)
    if (!contains(removed, e.winner) && !contains(removed, e.loser)) priority.edges.push_back(e);

  std::vector<PotentialAnswer> answers;
  for (const PotentialAnswer& a : instance.answers()) {
    PotentialAnswer kept{a.id, {}};
    for (const FactSet& cause : a.causes)
      if (set_intersection(cause, removed).empty()) kept.causes.push_back(cause);
    if (kept.causes.empty()) {
      if (report) report->dropped_answers.push_back(a.id);
      continue;
    }
    answers.push_back(std::move(kept));
  }
  return PrioritizedInstance(instance.facts(), std::move(conflicts), std::move(priority),
                             std::move(answers));
}

TrivialSplit extract_trivial_answers(const PrioritizedInstance& instance) {
  TrivialSplit out;
  std::vector<PotentialAnswer> remaining;
  const DirectedConflictGraph& graph = instance.graph();
  for (const PotentialAnswer& a : instance.answers()) {
    PotentialAnswer reduced{a.id, {}};
    bool trivial = false;
    for (const FactSet& cause : a.causes) {
      FactSet rest;
      for (FactId f : cause)
        if (graph.out_degree(f) > 0 || instance.self_inconsistent(f)) rest.push_back(f);
      if (rest.empty()) {
        trivial = true;
        break;
      }
      reduced.causes.push_back(std::move(rest));
    }
    if (trivial) {
      out.trivial.push_back(a.id);
      continue;
    }
    std::vector<FactSet> unique;
    for (FactSet& c : reduced.causes)
      if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(std::move(c));
    reduced.causes = std::move(unique);
    remaining.push_back(std::move(reduced));
  }
  out.reduced = instance.with_answers(std::move(remaining));
  return out;
}

}  // namespace orbits
