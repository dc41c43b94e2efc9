#pragma once

// Differential checking of the SAT pipeline against the brute-force oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbits/encoder.hpp"
#include "orbits/filters.hpp"
#include "orbits/generate.hpp"
#include "orbits/kb_model.hpp"
#include "orbits/oracle.hpp"

namespace orbits {

struct Configuration {
  EncodingSpec spec;
  Algorithm algorithm = Algorithm::Simple;

  std::string label() const;
};

/// Every valid (semantics, repair, neg, max, algorithm) combination for the
/// instance. Completion repairs also get P1/P2 when the priority is
/// score-structured.
std::vector<Configuration> valid_configurations(const PrioritizedInstance& instance,
                                                const MaxOptions& options = {});

struct VerifyOptions {
  std::size_t trials = 500;
  std::size_t max_facts = 8;
  std::size_t max_conflicts = 12;
  std::size_t answers = 3;
  std::size_t max_cause_size = 3;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  /// Mutant: completion encoding without acyclicity.
  bool drop_acyc = false;
  /// Force every random priority to be score-structured.
  bool score_only = false;
  /// Checked before the random trials when present.
  std::optional<PrioritizedInstance> fixture;
  OracleLimits limits;
  EngineOptions engine;
};

struct Mismatch {
  std::string where;
  std::string configuration;
  std::vector<std::string> expected;
  std::vector<std::string> actual;
  std::string detail;
  std::string kb_json;
  std::string answers_json;

  std::string describe() const;
};

struct InstanceCheck {
  std::size_t checks = 0;
  std::size_t containment_checks = 0;
  bool score_structured = false;
  bool skipped = false;
  std::vector<Mismatch> mismatches;
  /// Failed repair-family or answer-set containment properties.
  std::vector<Mismatch> violations;
};

/// Compares answer_query with oracle_answers for every valid configuration
/// and checks the containment properties between repair families and
/// semantics.
InstanceCheck check_instance(const PrioritizedInstance& instance, const std::string& where,
                             const VerifyOptions& options);

/// Trial i: instance drawn from mix_seed(seed, i), priority mode cycling
/// through empty, score 2, score 5, random 0.5, random 0.8.
PrioritizedInstance verification_instance(const VerifyOptions& options, std::size_t trial,
                                          std::string* priority_label = nullptr);

struct VerifyReport {
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::size_t score_structured = 0;
  std::size_t checks = 0;
  std::size_t containment_checks = 0;
  std::size_t mismatch_count = 0;
  std::size_t violation_count = 0;
  std::optional<Mismatch> first_mismatch;
  std::optional<Mismatch> first_violation;

  bool ok() const { return mismatch_count == 0 && violation_count == 0; }
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace orbits
