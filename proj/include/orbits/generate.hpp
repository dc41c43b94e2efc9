#pragma once

// Seeded synthetic instances for tests, verification and benchmarks.

#include <cstdint>
#include <string>

#include "orbits/kb_model.hpp"

namespace orbits {

struct InstanceParams {
  std::size_t facts = 8;
  std::size_t conflicts = 6;
  std::size_t answers = 3;
  std::size_t max_cause_size = 2;
  std::size_t max_causes = 3;
  std::uint64_t seed = 0;
};

/// Distinct binary conflicts drawn uniformly; each answer gets 1..max_causes
/// causes of 1..max_cause_size distinct facts. Empty priority. Throws
/// std::invalid_argument on infeasible parameters.
PrioritizedInstance random_instance(const InstanceParams& params);

struct PriorityParams {
  enum class Mode { None, Score, Random };
  Mode mode = Mode::None;
  std::uint32_t levels = 2;
  double p = 0.5;
  std::uint64_t seed = 0;

  std::string label() const;
};

/// Score mode draws a score in [0, levels) per fact. Throws
/// std::invalid_argument on levels == 0 or p outside [0, 1].
PriorityRelation generate_priority(const PrioritizedInstance& instance, const PriorityParams& params);

/// splitmix64 step, for deriving independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace orbits
