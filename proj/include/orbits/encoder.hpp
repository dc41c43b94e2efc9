#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orbits/cnf.hpp"
#include "orbits/kb_model.hpp"

namespace orbits {

enum class Semantics { AR, IAR, Brave };
enum class RepairType { S, P, C };
enum class MaxVariant { S, P1, P2, C };
enum class NegVariant { Neg1, Neg2 };

std::string_view to_string(Semantics s);
std::string_view to_string(RepairType r);
std::string_view to_string(MaxVariant m);
std::string_view to_string(NegVariant n);
std::optional<Semantics> parse_semantics(std::string_view text);
std::optional<RepairType> parse_repair(std::string_view text);
std::optional<MaxVariant> parse_max(std::string_view text);
std::optional<NegVariant> parse_neg(std::string_view text);

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MaxOptions {
  /// Largest R(F) accepted by the completion encoding.
  std::size_t c_node_cap = 64;
  /// Test-only mutant: omit the acyclicity subformula of the completion encoding.
  bool drop_acyc = false;
};

struct EncodingSpec {
  Semantics sem = Semantics::AR;
  RepairType repair = RepairType::P;
  MaxVariant max = MaxVariant::P1;
  NegVariant neg = NegVariant::Neg1;
  MaxOptions options;
};

/// Maximality encoding used by default for each repair type.
MaxVariant default_max(RepairType repair);

/// Throws SpecError when max does not fit repair. Completion repairs may use
/// P1/P2 only over a score-structured priority. Subset repairs require an
/// instance without priority (see instance_for_repair).
void validate_spec(const EncodingSpec& spec, const PrioritizedInstance& instance);

/// Subset repairs ignore the priority relation, so the encodings run over the
/// instance with ≻ removed; other repair types use the instance unchanged.
PrioritizedInstance instance_for_repair(const PrioritizedInstance& instance, RepairType repair);

/// Clauses forcing some fact of cause out of the selected set. With an
/// activator, ¬activator is prepended to the first clause only.
std::vector<KeyClause> encode_neg_cause(const PrioritizedInstance& instance, const FactSet& cause,
                                        NegVariant variant,
                                        std::optional<VarKey> activator = std::nullopt,
                                        std::uint32_t ns = 0);

/// Conjunction of encode_neg_cause over the causes of answer; multi mode
/// activates each cause by Answer(answer).
std::vector<KeyClause> encode_neg_query(const PrioritizedInstance& instance, std::uint32_t answer,
                                        NegVariant variant, bool multi);

std::vector<KeyClause> encode_pos_cause(const FactSet& cause, std::uint32_t ns = 0);

std::vector<KeyClause> encode_pos_query(const PrioritizedInstance& instance, std::uint32_t answer,
                                        bool multi);

std::vector<KeyClause> encode_consistency(const PrioritizedInstance& instance,
                                          const FactSet& scope, std::uint32_t ns = 0);

struct MaxEncoding {
  std::vector<KeyClause> clauses;
  FactSet used_facts;
};

/// Throws CapacityError when the completion encoding would exceed the node cap.
MaxEncoding encode_max(const PrioritizedInstance& instance, MaxVariant variant,
                       const FactSet& scope, const MaxOptions& options = {},
                       std::uint32_t ns = 0);

struct Target {
  enum class Kind { Answer, Cause, Fact };
  Kind kind = Kind::Answer;
  std::uint32_t answer = 0;
  /// The cause for Kind::Cause, the single fact for Kind::Fact.
  FactSet facts;

  static Target of_answer(std::uint32_t a) { return {Kind::Answer, a, {}}; }
  static Target of_cause(FactSet c) { return {Kind::Cause, 0, std::move(c)}; }
  static Target of_fact(FactId f) { return {Kind::Fact, 0, {f}}; }
};

/// Φ formulas: UNSAT means the target holds for AR/IAR, SAT means it holds for brave.
CnfFormula build_single_formula(const PrioritizedInstance& instance, const EncodingSpec& spec,
                                const Target& target);

struct MultiTarget {
  enum class Kind { Answers, Relevant };
  Kind kind = Kind::Answers;
  std::vector<std::uint32_t> answers;
  FactSet facts;

  static MultiTarget of_answers(std::vector<std::uint32_t> a) {
    return {Kind::Answers, std::move(a), {}};
  }
  static MultiTarget of_relevant(FactSet f) { return {Kind::Relevant, {}, std::move(f)}; }
};

/// Ψ formulas. soft_units carries x_a per answer (or y_α per relevant fact)
/// in target order; the units are never added as hard clauses.
CnfFormula build_multi_formula(const PrioritizedInstance& instance, const EncodingSpec& spec,
                               const MultiTarget& target);

}  // namespace orbits
