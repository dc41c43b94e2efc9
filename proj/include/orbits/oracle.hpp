#pragma once

// Brute-force ground truth over small instances: explicit enumeration of
// subset, Pareto-optimal and completion-optimal repairs.

#include <string>
#include <vector>

#include "orbits/encoder.hpp"
#include "orbits/kb_model.hpp"

namespace orbits {

struct OracleLimits {
  /// Facts occurring in some binary conflict.
  std::size_t max_conflicting_facts = 22;
  /// Conflicting pairs left unoriented by the priority relation.
  std::size_t max_unoriented_pairs = 16;
  /// Instances up to this many facts also run the full Pareto definition.
  std::size_t full_pareto_check_facts = 12;
};

struct RepairFamily {
  RepairType kind = RepairType::S;
  /// Sorted list of repairs, each a sorted fact set.
  std::vector<FactSet> repairs;
  /// Number of acyclic completions examined (completion repairs only).
  std::size_t completions = 0;
};

/// No binary conflict inside the set and no self-inconsistent member.
bool is_consistent(const PrioritizedInstance& instance, const FactSet& facts);

/// Single-fact test: no β outside R with β≻α for every α∈R conflicting with β.
bool is_pareto_optimal(const PrioritizedInstance& instance, const FactSet& repair);
/// Straight from the definition, by scanning every consistent subset.
bool is_pareto_optimal_full(const PrioritizedInstance& instance, const FactSet& repair);

/// Unique Pareto-optimal repair under a total priority given as winner/loser edges.
FactSet repair_for_total_priority(const PrioritizedInstance& instance,
                                  const std::vector<PriorityEdge>& total);

/// Throws CapacityError when a cap in limits is exceeded.
RepairFamily enumerate_repairs(const PrioritizedInstance& instance, const OracleLimits& limits = {});
RepairFamily enumerate_pareto_repairs(const PrioritizedInstance& instance,
                                      const OracleLimits& limits = {});
RepairFamily enumerate_completion_repairs(const PrioritizedInstance& instance,
                                          const OracleLimits& limits = {});
RepairFamily enumerate_family(const PrioritizedInstance& instance, RepairType kind,
                              const OracleLimits& limits = {});

/// Facts common to every repair of the family.
FactSet repair_intersection(const RepairFamily& family);

/// Answer ids, in instance order, that hold over the family under sem.
std::vector<std::string> answers_over(const PrioritizedInstance& instance,
                                      const RepairFamily& family, Semantics sem);

std::vector<std::string> oracle_answers(const PrioritizedInstance& instance, Semantics sem,
                                        RepairType repair, const OracleLimits& limits = {});

}  // namespace orbits
