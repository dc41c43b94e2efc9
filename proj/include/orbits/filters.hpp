#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbits/encoder.hpp"
#include "orbits/kb_model.hpp"
#include "orbits/sat_engine.hpp"

namespace orbits {

enum class Algorithm { Simple, AllMaxSAT, AllMUSes, Assumptions, CauseByCause, IARCauses, IARFacts };

std::string_view to_string(Algorithm a);
/// CLI spellings: simple, maxsat, muses, assume, cause, iarcauses, iarfacts.
std::optional<Algorithm> parse_algorithm(std::string_view text);
std::vector<Algorithm> all_algorithms();
bool algorithm_supports(Algorithm a, Semantics sem);

struct FilterRequest {
  PrioritizedInstance instance;
  EncodingSpec spec;
  Algorithm algorithm = Algorithm::Simple;
  EngineOptions engine;
};

struct FilterStats {
  std::uint64_t solver_calls = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t variables = 0;
  std::uint64_t clauses = 0;

  void absorb(const SolverStats& s);
};

struct FilterReport {
  /// Answer ids in input order; includes the trivial ones.
  std::vector<std::string> answers;
  std::vector<std::string> trivial;
  FactSet removed_self_inconsistent;
  double preprocess_ms = 0;
  double filter_ms = 0;
  FilterStats stats;
  /// False when a solver budget ran out; answers then holds what was decided.
  bool complete = true;
  std::string note;
};

struct SelfInconsistencyReport {
  FactSet removed_facts;
  std::vector<std::string> dropped_answers;
};

/// Drops self-inconsistent facts from the conflicts, every cause containing
/// one, and every answer left without a cause.
PrioritizedInstance remove_self_inconsistent(const PrioritizedInstance& instance,
                                             SelfInconsistencyReport* report = nullptr);

struct TrivialSplit {
  std::vector<std::string> trivial;
  /// Instance whose answers are the non-trivial ones with out-degree-0 facts
  /// stripped from their causes.
  PrioritizedInstance reduced;
};

TrivialSplit extract_trivial_answers(const PrioritizedInstance& instance);

/// Throws SpecError on an invalid (semantics, algorithm) pairing or encoding.
void validate_request(const FilterRequest& request);

// The individual algorithms run on a preprocessed instance (no
// self-inconsistent facts, no trivial answers, priority cleared for S).
FilterReport filter_simple(const FilterRequest& request);
FilterReport filter_all_maxsat(const FilterRequest& request);
FilterReport filter_all_muses(const FilterRequest& request);
FilterReport filter_assumptions(const FilterRequest& request);
FilterReport filter_cause_by_cause(const FilterRequest& request);
FilterReport filter_iar_causes(const FilterRequest& request);
FilterReport filter_iar_facts(const FilterRequest& request);

/// Full pipeline: preprocessing, dispatch, union with trivial answers.
FilterReport answer_query(const FilterRequest& request);

enum class AnswerClass { Trivial, IARNonTrivial, ARNotIAR, BraveNotAR, NotBrave };
std::string_view to_string(AnswerClass c);

struct ClassifiedAnswer {
  std::string id;
  AnswerClass cls = AnswerClass::NotBrave;
};

/// Runs IAR, AR and brave with the given encoding (sem is ignored) and buckets each answer.
std::vector<ClassifiedAnswer> classify_answers(const PrioritizedInstance& instance,
                                               const EncodingSpec& spec,
                                               Algorithm algorithm = Algorithm::Simple,
                                               EngineOptions engine = {});

}  // namespace orbits
