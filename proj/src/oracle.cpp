#include "orbits/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

namespace orbits {

namespace {

using Mask = std::uint64_t;

struct ConflictView {
  std::vector<FactId> conflicting;  // usable facts occurring in a usable pair
  std::vector<FactId> free;         // usable facts without conflicts
  std::vector<FactPair> pairs;      // pairs between usable facts
};

bool usable(const PrioritizedInstance& instance, FactId f) { return !instance.self_inconsistent(f); }

ConflictView view_of(const PrioritizedInstance& instance) {
  ConflictView v;
  std::vector<char> in_pair(instance.num_facts(), 0);
  for (const FactPair& p : instance.conflicts().pairs) {
    if (!usable(instance, p.lo) || !usable(instance, p.hi)) continue;
    v.pairs.push_back(p);
    in_pair[p.lo] = in_pair[p.hi] = 1;
  }
  for (FactId f = 0; f < instance.num_facts(); ++f) {
    if (!usable(instance, f)) continue;
    (in_pair[f] ? v.conflicting : v.free).push_back(f);
  }
  return v;
}

std::vector<FactSet> dedupe(std::vector<FactSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

}  // namespace

bool is_consistent(const PrioritizedInstance& instance, const FactSet& facts) {
  for (FactId f : facts) {
    if (instance.self_inconsistent(f)) return false;
    for (FactId g : instance.contradictors(f))
      if (contains(facts, g)) return false;
  }
  return true;
}

bool is_pareto_optimal(const PrioritizedInstance& instance, const FactSet& repair) {
  for (FactId beta = 0; beta < instance.num_facts(); ++beta) {
    if (!usable(instance, beta) || contains(repair, beta)) continue;
    bool improves = true;
    for (FactId alpha : instance.contradictors(beta)) {
      if (contains(repair, alpha) && !instance.prefers(beta, alpha)) {
        improves = false;
        break;
      }
    }
    if (improves) return false;
  }
  return true;
}

bool is_pareto_optimal_full(const PrioritizedInstance& instance, const FactSet& repair) {
  std::vector<FactId> universe;
  for (FactId f = 0; f < instance.num_facts(); ++f)
    if (usable(instance, f)) universe.push_back(f);
  if (universe.size() > 24) throw CapacityError("full Pareto check limited to 24 facts");
  const std::size_t n = universe.size();
  std::vector<Mask> conflict(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (instance.conflicting(universe[i], universe[j])) conflict[i] |= Mask{1} << j;
  Mask r = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (contains(repair, universe[i])) r |= Mask{1} << i;

  for (Mask b = 0; b < (Mask{1} << n); ++b) {
    bool consistent = true;
    for (std::size_t i = 0; i < n && consistent; ++i)
      if ((b >> i & 1) && (conflict[i] & b)) consistent = false;
    if (!consistent) continue;
    const Mask gained = b & ~r;
    const Mask lost = r & ~b;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(gained >> i & 1)) continue;
      bool dominates_all = true;
      for (std::size_t j = 0; j < n && dominates_all; ++j)
        if ((lost >> j & 1) && !instance.prefers(universe[i], universe[j])) dominates_all = false;
      if (dominates_all) return false;
    }
  }
  return true;
}

FactSet repair_for_total_priority(const PrioritizedInstance& instance,
                                  const std::vector<PriorityEdge>& total) {
  std::vector<PriorityEdge> order = total;
  std::sort(order.begin(), order.end());
  auto beats = [&](FactId w, FactId l) {
    return std::binary_search(order.begin(), order.end(), PriorityEdge{w, l});
  };
  const ConflictView view = view_of(instance);
  std::vector<char> remaining(instance.num_facts(), 0);
  for (FactId f : view.conflicting) remaining[f] = 1;
  std::size_t left = view.conflicting.size();
  FactSet out(view.free.begin(), view.free.end());
  while (left > 0) {
    std::vector<FactId> top;
    for (FactId f : view.conflicting) {
      if (!remaining[f]) continue;
      bool dominated = false;
      for (FactId g : instance.contradictors(f)) {
        if (remaining[g] && beats(g, f)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) top.push_back(f);
    }
    if (top.empty()) throw std::logic_error("priority given to the repair procedure is cyclic");
    for (FactId f : top) {
      out.push_back(f);
      remaining[f] = 0;
      --left;
    }
    for (FactId f : top) {
      for (FactId g : instance.contradictors(f)) {
        if (remaining[g]) {
          remaining[g] = 0;
          --left;
        }
      }
    }
  }
  return make_fact_set(std::move(out));
}

RepairFamily enumerate_repairs(const PrioritizedInstance& instance, const OracleLimits& limits) {
  const ConflictView view = view_of(instance);
  const std::size_t m = view.conflicting.size();
  if (m > limits.max_conflicting_facts || m > 63) {
    throw CapacityError(std::to_string(m) + " conflicting facts exceed the oracle cap of " +
                        std::to_string(limits.max_conflicting_facts));
  }
  std::vector<Mask> compatible(m, 0);
  const Mask all = m == 0 ? 0 : (m == 64 ? ~Mask{0} : (Mask{1} << m) - 1);
  for (std::size_t i = 0; i < m; ++i) {
    Mask conflict = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (instance.conflicting(view.conflicting[i], view.conflicting[j])) conflict |= Mask{1} << j;
    compatible[i] = all & ~conflict & ~(Mask{1} << i);
  }

  RepairFamily family;
  family.kind = RepairType::S;
  // Maximal cliques of the compatibility graph, i.e. maximal independent sets
  // of the conflict graph (Bron-Kerbosch with pivoting).
  std::function<void(Mask, Mask, Mask)> expand = [&](Mask r, Mask p, Mask x) {
    if (p == 0 && x == 0) {
      FactSet repair(view.free.begin(), view.free.end());
      for (std::size_t i = 0; i < m; ++i)
        if (r >> i & 1) repair.push_back(view.conflicting[i]);
      family.repairs.push_back(make_fact_set(std::move(repair)));
      return;
    }
    const Mask px = p | x;
    std::size_t pivot = static_cast<std::size_t>(std::countr_zero(px));
    int best = -1;
    for (Mask rest = px; rest; rest &= rest - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(rest));
      const int score = std::popcount(p & compatible[u]);
      if (score > best) {
        best = score;
        pivot = u;
      }
    }
    for (Mask cand = p & ~compatible[pivot]; cand; cand &= cand - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(cand));
      const Mask bit = Mask{1} << v;
      expand(r | bit, p & compatible[v], x & compatible[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  expand(0, all, 0);
  family.repairs = dedupe(std::move(family.repairs));
  return family;
}

RepairFamily enumerate_pareto_repairs(const PrioritizedInstance& instance,
                                      const OracleLimits& limits) {
  RepairFamily all = enumerate_repairs(instance, limits);
  std::size_t usable_count = 0;
  for (FactId f = 0; f < instance.num_facts(); ++f) usable_count += usable(instance, f) ? 1 : 0;
  const bool cross_check = usable_count <= limits.full_pareto_check_facts;
  RepairFamily family;
  family.kind = RepairType::P;
  for (FactSet& repair : all.repairs) {
    const bool optimal = is_pareto_optimal(instance, repair);
    if (cross_check && optimal != is_pareto_optimal_full(instance, repair)) {
      throw std::logic_error("single-fact Pareto test disagrees with the definition");
    }
    if (optimal) family.repairs.push_back(std::move(repair));
  }
  return family;
}

RepairFamily enumerate_completion_repairs(const PrioritizedInstance& instance,
                                          const OracleLimits& limits) {
  const ConflictView view = view_of(instance);
  std::vector<PriorityEdge> fixed;
  std::vector<FactPair> open;
  for (const FactPair& p : view.pairs) {
    if (instance.prefers(p.lo, p.hi)) {
      fixed.push_back({p.lo, p.hi});
    } else if (instance.prefers(p.hi, p.lo)) {
      fixed.push_back({p.hi, p.lo});
    } else {
      open.push_back(p);
    }
  }
  if (open.size() > limits.max_unoriented_pairs) {
    throw CapacityError(std::to_string(open.size()) +
                        " unoriented conflicting pairs exceed the oracle cap of " +
                        std::to_string(limits.max_unoriented_pairs));
  }
  std::vector<std::vector<FactId>> succ(instance.num_facts());
  for (const PriorityEdge& e : fixed) succ[e.winner].push_back(e.loser);

  std::vector<char> visited(instance.num_facts(), 0);
  auto reaches = [&](FactId from, FactId to) {
    std::fill(visited.begin(), visited.end(), 0);
    std::vector<FactId> stack{from};
    visited[from] = 1;
    while (!stack.empty()) {
      const FactId f = stack.back();
      stack.pop_back();
      if (f == to) return true;
      for (FactId g : succ[f]) {
        if (!visited[g]) {
          visited[g] = 1;
          stack.push_back(g);
        }
      }
    }
    return false;
  };

  RepairFamily family;
  family.kind = RepairType::C;
  std::vector<PriorityEdge> chosen = fixed;
  std::function<void(std::size_t)> orient = [&](std::size_t k) {
    if (k == open.size()) {
      ++family.completions;
      family.repairs.push_back(repair_for_total_priority(instance, chosen));
      return;
    }
    const FactPair p = open[k];
    for (const PriorityEdge e : {PriorityEdge{p.lo, p.hi}, PriorityEdge{p.hi, p.lo}}) {
      if (reaches(e.loser, e.winner)) continue;
      succ[e.winner].push_back(e.loser);
      chosen.push_back(e);
      orient(k + 1);
      chosen.pop_back();
      succ[e.winner].pop_back();
    }
  };
  orient(0);
  family.repairs = dedupe(std::move(family.repairs));
  return family;
}

RepairFamily enumerate_family(const PrioritizedInstance& instance, RepairType kind,
                              const OracleLimits& limits) {
  switch (kind) {
    case RepairType::S: return enumerate_repairs(instance, limits);
    case RepairType::P: return enumerate_pareto_repairs(instance, limits);
    case RepairType::C: return enumerate_completion_repairs(instance, limits);
  }
  return {};
}

FactSet repair_intersection(const RepairFamily& family) {
  if (family.repairs.empty()) return {};
  FactSet out = family.repairs.front();
  for (const FactSet& r : family.repairs) out = set_intersection(out, r);
  return out;
}

std::vector<std::string> answers_over(const PrioritizedInstance& instance,
                                      const RepairFamily& family, Semantics sem) {
  auto entails = [](const FactSet& repair, const PotentialAnswer& a) {
    return std::any_of(a.causes.begin(), a.causes.end(),
                       [&](const FactSet& c) { return is_subset(c, repair); });
  };
  const FactSet common = repair_intersection(family);
  std::vector<std::string> out;
  for (const PotentialAnswer& a : instance.answers()) {
    bool holds = false;
    switch (sem) {
      case Semantics::Brave:
        holds = std::any_of(family.repairs.begin(), family.repairs.end(),
                            [&](const FactSet& r) { return entails(r, a); });
        break;
      case Semantics::AR:
        holds = !family.repairs.empty() &&
                std::all_of(family.repairs.begin(), family.repairs.end(),
                            [&](const FactSet& r) { return entails(r, a); });
        break;
      case Semantics::IAR:
        holds = !family.repairs.empty() && entails(common, a);
        break;
    }
    if (holds) out.push_back(a.id);
  }
  return out;
}

std::vector<std::string> oracle_answers(const PrioritizedInstance& instance, Semantics sem,
                                        RepairType repair, const OracleLimits& limits) {
  const PrioritizedInstance view = instance_for_repair(instance, repair);
  return answers_over(view, enumerate_family(view, repair, limits), sem);
}

}  // namespace orbits
