#pragma once

// Prioritized knowledge bases at the conflict-graph level: facts are dense
// integer ids, conflicts are binary (plus unary self-inconsistent facts),
// and the priority relation orients some conflicting pairs.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbits {

using FactId = std::uint32_t;

/// Sorted, duplicate-free list of fact ids.
using FactSet = std::vector<FactId>;

FactSet make_fact_set(std::vector<FactId> facts);
bool contains(const FactSet& set, FactId fact);
bool is_subset(const FactSet& small, const FactSet& large);
FactSet set_union(const FactSet& a, const FactSet& b);
FactSet set_difference(const FactSet& a, const FactSet& b);
FactSet set_intersection(const FactSet& a, const FactSet& b);

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unordered conflicting pair, stored with lo < hi.
struct FactPair {
  FactId lo = 0;
  FactId hi = 0;

  static FactPair of(FactId a, FactId b) { return a < b ? FactPair{a, b} : FactPair{b, a}; }
  friend auto operator<=>(const FactPair&, const FactPair&) = default;
};

/// winner ≻ loser.
struct PriorityEdge {
  FactId winner = 0;
  FactId loser = 0;
  friend auto operator<=>(const PriorityEdge&, const PriorityEdge&) = default;
};

struct ConflictSet {
  std::vector<FactPair> pairs;
  FactSet self_inconsistent;

  /// Throws InstanceError on a == b.
  void add(FactId a, FactId b);
  void add_self_inconsistent(FactId a);
  /// Sorts and deduplicates both lists.
  void normalize();
  bool empty() const { return pairs.empty() && self_inconsistent.empty(); }
};

struct PriorityRelation {
  std::vector<PriorityEdge> edges;

  void add(FactId winner, FactId loser) { edges.push_back({winner, loser}); }
  void normalize();
  bool empty() const { return edges.empty(); }
  bool has(FactId winner, FactId loser) const;
  friend bool operator==(const PriorityRelation&, const PriorityRelation&) = default;
};

struct PotentialAnswer {
  std::string id;
  std::vector<FactSet> causes;
};

/// Display data for a fact; the id in the source file and an optional label.
struct FactInfo {
  std::int64_t external_id = 0;
  std::string label;
};

/// Edge α→β iff α⊥β and not α≻β.
class DirectedConflictGraph {
 public:
  DirectedConflictGraph() = default;
  explicit DirectedConflictGraph(std::vector<FactSet> out_edges) : out_(std::move(out_edges)) {}

  std::size_t num_facts() const { return out_.size(); }
  std::span<const FactId> successors(FactId fact) const { return out_[fact]; }
  std::size_t out_degree(FactId fact) const { return out_[fact].size(); }
  bool has_edge(FactId from, FactId to) const { return contains(out_[from], to); }
  std::vector<std::pair<FactId, FactId>> edges() const;

 private:
  std::vector<FactSet> out_;
};

/// Immutable after construction. Conflict and priority indices are built
/// eagerly so that encoders can query adjacency in O(log deg).
class PrioritizedInstance {
 public:
  PrioritizedInstance() = default;
  /// Throws InstanceError when a conflict, priority edge, or cause refers to
  /// a fact outside [0, facts.size()), when a cause is empty, or when an
  /// answer has no cause.
  PrioritizedInstance(std::vector<FactInfo> facts, ConflictSet conflicts, PriorityRelation priority,
                      std::vector<PotentialAnswer> answers);

  /// Facts 0..n-1 with external id == index.
  static PrioritizedInstance with_dense_facts(std::size_t num_facts, ConflictSet conflicts,
                                              PriorityRelation priority,
                                              std::vector<PotentialAnswer> answers);

  std::size_t num_facts() const { return facts_.size(); }
  const std::vector<FactInfo>& facts() const { return facts_; }
  const ConflictSet& conflicts() const { return conflicts_; }
  const PriorityRelation& priority() const { return priority_; }
  const std::vector<PotentialAnswer>& answers() const { return answers_; }
  const DirectedConflictGraph& graph() const { return graph_; }

  /// All β with α⊥β (binary conflicts only).
  std::span<const FactId> contradictors(FactId fact) const { return contradictors_[fact]; }
  /// All β with β≻α.
  std::span<const FactId> dominators(FactId fact) const { return dominators_[fact]; }
  /// Non-dominated contradictors: β with α⊥β and not α≻β.
  std::span<const FactId> challengers(FactId fact) const { return graph_.successors(fact); }

  bool conflicting(FactId a, FactId b) const { return contains(contradictors_[a], b); }
  bool prefers(FactId winner, FactId loser) const { return contains(dominated_[winner], loser); }
  bool self_inconsistent(FactId fact) const { return self_inconsistent_flag_[fact] != 0; }
  bool in_some_conflict(FactId fact) const { return !contradictors_[fact].empty(); }

  std::string describe(FactId fact) const;

  PrioritizedInstance with_priority(PriorityRelation priority) const;
  PrioritizedInstance with_answers(std::vector<PotentialAnswer> answers) const;

 private:
  std::vector<FactInfo> facts_;
  ConflictSet conflicts_;
  PriorityRelation priority_;
  std::vector<PotentialAnswer> answers_;

  std::vector<FactSet> contradictors_;
  std::vector<FactSet> dominators_;
  std::vector<FactSet> dominated_;
  std::vector<char> self_inconsistent_flag_;
  DirectedConflictGraph graph_;
};

struct PriorityReport {
  enum class Violation { None, NotAConflict, Symmetric, Cycle };

  Violation violation = Violation::None;
  /// Facts exhibiting the violation: the offending pair, or the cycle in order.
  std::vector<FactId> witness;

  bool ok() const { return violation == Violation::None; }
  std::string message() const;
};

PriorityReport validate_priority(const ConflictSet& conflicts, const PriorityRelation& priority);

/// Self-inconsistent facts and the pairs touching them are left out.
DirectedConflictGraph directed_conflict_graph(std::size_t num_facts, const ConflictSet& conflicts,
                                              const PriorityRelation& priority);

/// R(F): the seed together with every fact reachable from it.
FactSet reachable_set(const DirectedConflictGraph& graph, const FactSet& seed);

/// R⁻(F): least fixpoint of R ∪ {γ | α∈R, β≻α, β⊥γ, not β≻γ}.
FactSet reachable_minus_set(const PrioritizedInstance& instance, const FactSet& seed);

/// α≻β iff {α,β} conflicts and score(α) > score(β). Throws InstanceError when
/// a fact occurring in a conflict pair has no score.
PriorityRelation build_score_priority(const ConflictSet& conflicts,
                                      const std::map<FactId, std::uint32_t>& scores);

/// Visits conflict pairs in (lo, hi) order. Each pair is oriented with
/// probability p, in a uniformly drawn direction, and skipped if that
/// orientation would close a cycle.
PriorityRelation build_random_priority(const ConflictSet& conflicts, double p, std::uint64_t seed);

/// True iff some score function induces exactly the given relation on every
/// conflicting pair.
bool is_score_structured(const ConflictSet& conflicts, const PriorityRelation& priority);

}  // namespace orbits
