#include "orbits/kb_model.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "orbits/random.hpp"

namespace orbits {

FactSet make_fact_set(std::vector<FactId> facts) {
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
  return facts;
}

bool contains(const FactSet& set, FactId fact) {
  return std::binary_search(set.begin(), set.end(), fact);
}

bool is_subset(const FactSet& small, const FactSet& large) {
  return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

FactSet set_union(const FactSet& a, const FactSet& b) {
  FactSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FactSet set_difference(const FactSet& a, const FactSet& b) {
  FactSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FactSet set_intersection(const FactSet& a, const FactSet& b) {
  FactSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void ConflictSet::add(FactId a, FactId b) {
  if (a == b) throw InstanceError("binary conflict between a fact and itself: " + std::to_string(a));
  pairs.push_back(FactPair::of(a, b));
}

void ConflictSet::add_self_inconsistent(FactId a) { self_inconsistent.push_back(a); }

void ConflictSet::normalize() {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  self_inconsistent = make_fact_set(std::move(self_inconsistent));
}

void PriorityRelation::normalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool PriorityRelation::has(FactId winner, FactId loser) const {
  return std::find(edges.begin(), edges.end(), PriorityEdge{winner, loser}) != edges.end();
}

std::vector<std::pair<FactId, FactId>> DirectedConflictGraph::edges() const {
  std::vector<std::pair<FactId, FactId>> out;
  for (FactId from = 0; from < out_.size(); ++from)
    for (FactId to : out_[from]) out.emplace_back(from, to);
  return out;
}

PrioritizedInstance::PrioritizedInstance(std::vector<FactInfo> facts, ConflictSet conflicts,
                                         PriorityRelation priority,
                                         std::vector<PotentialAnswer> answers)
    : facts_(std::move(facts)),
      conflicts_(std::move(conflicts)),
      priority_(std::move(priority)),
      answers_(std::move(answers)) {
  const std::size_t n = facts_.size();
  auto check = [n](FactId f, const char* where) {
    if (f >= n) {
      throw InstanceError(std::string("unknown fact id ") + std::to_string(f) + " in " + where);
    }
  };
  for (const FactPair& p : conflicts_.pairs) {
    check(p.lo, "conflicts");
    check(p.hi, "conflicts");
    if (p.lo == p.hi) throw InstanceError("binary conflict between a fact and itself");
  }
  for (FactId f : conflicts_.self_inconsistent) check(f, "conflicts");
  for (const PriorityEdge& e : priority_.edges) {
    check(e.winner, "priority");
    check(e.loser, "priority");
  }
  for (PotentialAnswer& answer : answers_) {
    if (answer.causes.empty()) throw InstanceError("answer '" + answer.id + "' has no cause");
    for (FactSet& cause : answer.causes) {
      cause = make_fact_set(std::move(cause));
      if (cause.empty()) throw InstanceError("answer '" + answer.id + "' has an empty cause");
      for (FactId f : cause) check(f, "causes");
    }
  }
  conflicts_.normalize();
  priority_.normalize();

  contradictors_.assign(n, {});
  dominators_.assign(n, {});
  dominated_.assign(n, {});
  self_inconsistent_flag_.assign(n, 0);
  for (const FactPair& p : conflicts_.pairs) {
    contradictors_[p.lo].push_back(p.hi);
    contradictors_[p.hi].push_back(p.lo);
  }
  for (const PriorityEdge& e : priority_.edges) {
    dominators_[e.loser].push_back(e.winner);
    dominated_[e.winner].push_back(e.loser);
  }
  for (FactId f : conflicts_.self_inconsistent) self_inconsistent_flag_[f] = 1;
  for (std::size_t f = 0; f < n; ++f) {
    contradictors_[f] = make_fact_set(std::move(contradictors_[f]));
    dominators_[f] = make_fact_set(std::move(dominators_[f]));
    dominated_[f] = make_fact_set(std::move(dominated_[f]));
  }
  graph_ = directed_conflict_graph(n, conflicts_, priority_);
}

PrioritizedInstance PrioritizedInstance::with_dense_facts(std::size_t num_facts,
                                                          ConflictSet conflicts,
                                                          PriorityRelation priority,
                                                          std::vector<PotentialAnswer> answers) {
  std::vector<FactInfo> facts(num_facts);
  for (std::size_t i = 0; i < num_facts; ++i) facts[i].external_id = static_cast<std::int64_t>(i);
  return PrioritizedInstance(std::move(facts), std::move(conflicts), std::move(priority),
                             std::move(answers));
}

std::string PrioritizedInstance::describe(FactId fact) const {
  if (fact < facts_.size() && !facts_[fact].label.empty()) return facts_[fact].label;
  if (fact < facts_.size()) return std::to_string(facts_[fact].external_id);
  return "#" + std::to_string(fact);
}

PrioritizedInstance PrioritizedInstance::with_priority(PriorityRelation priority) const {
  return PrioritizedInstance(facts_, conflicts_, std::move(priority), answers_);
}

PrioritizedInstance PrioritizedInstance::with_answers(std::vector<PotentialAnswer> answers) const {
  return PrioritizedInstance(facts_, conflicts_, priority_, std::move(answers));
}

std::string PriorityReport::message() const {
  std::ostringstream os;
  switch (violation) {
    case Violation::None:
      return "ok";
    case Violation::NotAConflict:
      os << "priority edge " << witness.at(0) << " > " << witness.at(1)
         << " does not cover a conflict";
      break;
    case Violation::Symmetric:
      os << "priority holds in both directions between " << witness.at(0) << " and "
         << witness.at(1);
      break;
    case Violation::Cycle:
      os << "priority cycle:";
      for (FactId f : witness) os << ' ' << f;
      break;
  }
  return os.str();
}

namespace {

// Returns a cycle (in edge order) of the directed graph, or an empty vector.
std::vector<FactId> find_cycle(const std::map<FactId, std::vector<FactId>>& adjacency) {
  enum Color : char { White, Grey, Black };
  std::map<FactId, Color> color;
  std::map<FactId, FactId> parent;
  for (const auto& [root, _] : adjacency) {
    if (color[root] != White) continue;
    // Iterative DFS with an explicit edge cursor per frame.
    std::vector<std::pair<FactId, std::size_t>> stack{{root, 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      auto it = adjacency.find(node);
      if (it == adjacency.end() || next >= it->second.size()) {
        color[node] = Black;
        stack.pop_back();
        continue;
      }
      FactId succ = it->second[next++];
      if (color[succ] == Grey) {
        std::vector<FactId> cycle{succ};
        for (FactId f = node; f != succ; f = parent[f]) cycle.push_back(f);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (color[succ] == White) {
        color[succ] = Grey;
        parent[succ] = node;
        stack.emplace_back(succ, 0);
      }
    }
  }
  return {};
}

}  // namespace

PriorityReport validate_priority(const ConflictSet& conflicts, const PriorityRelation& priority) {
  std::vector<FactPair> pairs = conflicts.pairs;
  std::sort(pairs.begin(), pairs.end());
  PriorityReport report;
  for (const PriorityEdge& e : priority.edges) {
    if (e.winner == e.loser ||
        !std::binary_search(pairs.begin(), pairs.end(), FactPair::of(e.winner, e.loser))) {
      report.violation = PriorityReport::Violation::NotAConflict;
      report.witness = {e.winner, e.loser};
      return report;
    }
  }
  std::vector<PriorityEdge> edges = priority.edges;
  std::sort(edges.begin(), edges.end());
  for (const PriorityEdge& e : edges) {
    if (std::binary_search(edges.begin(), edges.end(), PriorityEdge{e.loser, e.winner})) {
      report.violation = PriorityReport::Violation::Symmetric;
      report.witness = {std::min(e.winner, e.loser), std::max(e.winner, e.loser)};
      return report;
    }
  }
  std::map<FactId, std::vector<FactId>> adjacency;
  for (const PriorityEdge& e : edges) adjacency[e.winner].push_back(e.loser);
  if (auto cycle = find_cycle(adjacency); !cycle.empty()) {
    report.violation = PriorityReport::Violation::Cycle;
    report.witness = std::move(cycle);
  }
  return report;
}

DirectedConflictGraph directed_conflict_graph(std::size_t num_facts, const ConflictSet& conflicts,
                                              const PriorityRelation& priority) {
  std::vector<char> self_inconsistent(num_facts, 0);
  for (FactId f : conflicts.self_inconsistent) self_inconsistent.at(f) = 1;
  std::vector<PriorityEdge> edges = priority.edges;
  std::sort(edges.begin(), edges.end());
  auto prefers = [&](FactId a, FactId b) {
    return std::binary_search(edges.begin(), edges.end(), PriorityEdge{a, b});
  };
  std::vector<FactSet> out(num_facts);
  for (const FactPair& p : conflicts.pairs) {
    if (self_inconsistent.at(p.lo) || self_inconsistent.at(p.hi)) continue;
    if (!prefers(p.lo, p.hi)) out[p.lo].push_back(p.hi);
    if (!prefers(p.hi, p.lo)) out[p.hi].push_back(p.lo);
  }
  for (FactSet& succ : out) succ = make_fact_set(std::move(succ));
  return DirectedConflictGraph(std::move(out));
}

FactSet reachable_set(const DirectedConflictGraph& graph, const FactSet& seed) {
  std::vector<char> seen(graph.num_facts(), 0);
  std::deque<FactId> queue;
  for (FactId f : seed) {
    if (f < seen.size() && !seen[f]) {
      seen[f] = 1;
      queue.push_back(f);
    }
  }
  FactSet out;
  while (!queue.empty()) {
    FactId f = queue.front();
    queue.pop_front();
    out.push_back(f);
    for (FactId g : graph.successors(f)) {
      if (!seen[g]) {
        seen[g] = 1;
        queue.push_back(g);
      }
    }
  }
  return make_fact_set(std::move(out));
}

FactSet reachable_minus_set(const PrioritizedInstance& instance, const FactSet& seed) {
  std::vector<char> seen(instance.num_facts(), 0);
  std::deque<FactId> queue;
  for (FactId f : seed) {
    if (!seen[f]) {
      seen[f] = 1;
      queue.push_back(f);
    }
  }
  FactSet out;
  while (!queue.empty()) {
    FactId alpha = queue.front();
    queue.pop_front();
    out.push_back(alpha);
    for (FactId beta : instance.dominators(alpha)) {
      for (FactId gamma : instance.challengers(beta)) {
        if (!seen[gamma]) {
          seen[gamma] = 1;
          queue.push_back(gamma);
        }
      }
    }
  }
  return make_fact_set(std::move(out));
}

PriorityRelation build_score_priority(const ConflictSet& conflicts,
                                      const std::map<FactId, std::uint32_t>& scores) {
  auto score = [&](FactId f) {
    auto it = scores.find(f);
    if (it == scores.end()) throw InstanceError("no score for conflicting fact " + std::to_string(f));
    return it->second;
  };
  PriorityRelation out;
  for (const FactPair& p : conflicts.pairs) {
    const auto lo = score(p.lo);
    const auto hi = score(p.hi);
    if (lo > hi) out.add(p.lo, p.hi);
    if (hi > lo) out.add(p.hi, p.lo);
  }
  out.normalize();
  return out;
}

PriorityRelation build_random_priority(const ConflictSet& conflicts, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InstanceError("orientation probability must lie in [0, 1]");
  std::vector<FactPair> pairs = conflicts.pairs;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  Rng rng(seed);
  std::map<FactId, std::vector<FactId>> successors;
  auto reaches = [&](FactId from, FactId to) {
    std::vector<FactId> stack{from};
    std::vector<FactId> visited{from};
    while (!stack.empty()) {
      FactId f = stack.back();
      stack.pop_back();
      if (f == to) return true;
      auto it = successors.find(f);
      if (it == successors.end()) continue;
      for (FactId g : it->second) {
        if (std::find(visited.begin(), visited.end(), g) == visited.end()) {
          visited.push_back(g);
          stack.push_back(g);
        }
      }
    }
    return false;
  };

  PriorityRelation out;
  for (const FactPair& pair : pairs) {
    if (!rng.chance(p)) continue;
    const bool lo_wins = rng.below(2) == 0;
    const FactId winner = lo_wins ? pair.lo : pair.hi;
    const FactId loser = lo_wins ? pair.hi : pair.lo;
    if (reaches(loser, winner)) continue;
    successors[winner].push_back(loser);
    out.add(winner, loser);
  }
  out.normalize();
  return out;
}

bool is_score_structured(const ConflictSet& conflicts, const PriorityRelation& priority) {
  std::map<FactId, FactId> parent;
  auto find = [&](FactId f) {
    if (!parent.contains(f)) parent[f] = f;
    FactId root = f;
    while (parent[root] != root) root = parent[root];
    while (parent[f] != root) {
      FactId next = parent[f];
      parent[f] = root;
      f = next;
    }
    return root;
  };
  std::vector<PriorityEdge> edges = priority.edges;
  std::sort(edges.begin(), edges.end());
  auto oriented = [&](FactId a, FactId b) {
    return std::binary_search(edges.begin(), edges.end(), PriorityEdge{a, b}) ||
           std::binary_search(edges.begin(), edges.end(), PriorityEdge{b, a});
  };
  // Incomparable conflicting facts must share a score.
  for (const FactPair& p : conflicts.pairs) {
    if (!oriented(p.lo, p.hi)) parent[find(p.lo)] = find(p.hi);
  }
  std::map<FactId, std::vector<FactId>> adjacency;
  for (const PriorityEdge& e : edges) {
    const FactId w = find(e.winner);
    const FactId l = find(e.loser);
    if (w == l) return false;
    adjacency[w].push_back(l);
  }
  return find_cycle(adjacency).empty();
}

}  // namespace orbits
