#include "orbits/encoder.hpp"

#include <algorithm>
#include <cctype>

namespace orbits {

std::string_view to_string(Semantics s) {
  switch (s) {
    case Semantics::AR: return "AR";
    case Semantics::IAR: return "IAR";
    case Semantics::Brave: return "brave";
  }
  return "?";
}

std::string_view to_string(RepairType r) {
  switch (r) {
    case RepairType::S: return "S";
    case RepairType::P: return "P";
    case RepairType::C: return "C";
  }
  return "?";
}

std::string_view to_string(MaxVariant m) {
  switch (m) {
    case MaxVariant::S: return "S";
    case MaxVariant::P1: return "P1";
    case MaxVariant::P2: return "P2";
    case MaxVariant::C: return "C";
  }
  return "?";
}

std::string_view to_string(NegVariant n) { return n == NegVariant::Neg1 ? "neg1" : "neg2"; }

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<Semantics> parse_semantics(std::string_view text) {
  const std::string t = lower(text);
  if (t == "ar") return Semantics::AR;
  if (t == "iar") return Semantics::IAR;
  if (t == "brave") return Semantics::Brave;
  return std::nullopt;
}

std::optional<RepairType> parse_repair(std::string_view text) {
  const std::string t = lower(text);
  if (t == "s") return RepairType::S;
  if (t == "p" || t == "p1" || t == "p2") return RepairType::P;
  if (t == "c") return RepairType::C;
  return std::nullopt;
}

std::optional<MaxVariant> parse_max(std::string_view text) {
  const std::string t = lower(text);
  if (t == "s") return MaxVariant::S;
  if (t == "p1") return MaxVariant::P1;
  if (t == "p2") return MaxVariant::P2;
  if (t == "c") return MaxVariant::C;
  return std::nullopt;
}

std::optional<NegVariant> parse_neg(std::string_view text) {
  const std::string t = lower(text);
  if (t == "1" || t == "neg1") return NegVariant::Neg1;
  if (t == "2" || t == "neg2") return NegVariant::Neg2;
  return std::nullopt;
}

MaxVariant default_max(RepairType repair) {
  switch (repair) {
    case RepairType::S: return MaxVariant::S;
    case RepairType::P: return MaxVariant::P1;
    case RepairType::C: return MaxVariant::C;
  }
  return MaxVariant::S;
}

void validate_spec(const EncodingSpec& spec, const PrioritizedInstance& instance) {
  const std::string combo =
      std::string(to_string(spec.repair)) + " repairs with " + std::string(to_string(spec.max));
  switch (spec.repair) {
    case RepairType::S:
      if (spec.max != MaxVariant::S) throw SpecError(combo + " maximality");
      if (!instance.priority().empty()) {
        throw SpecError("subset repairs are encoded over an instance without priority");
      }
      break;
    case RepairType::P:
      if (spec.max != MaxVariant::P1 && spec.max != MaxVariant::P2) {
        throw SpecError(combo + " maximality");
      }
      break;
    case RepairType::C:
      if (spec.max == MaxVariant::S) throw SpecError(combo + " maximality");
      if ((spec.max == MaxVariant::P1 || spec.max == MaxVariant::P2) &&
          !is_score_structured(instance.conflicts(), instance.priority())) {
        throw SpecError(combo + " maximality needs a score-structured priority");
      }
      break;
  }
}

PrioritizedInstance instance_for_repair(const PrioritizedInstance& instance, RepairType repair) {
  if (repair != RepairType::S || instance.priority().empty()) return instance;
  return instance.with_priority({});
}

std::vector<KeyClause> encode_neg_cause(const PrioritizedInstance& instance, const FactSet& cause,
                                        NegVariant variant, std::optional<VarKey> activator,
                                        std::uint32_t ns) {
  if (cause.empty()) throw InstanceError("cannot encode an empty cause");
  for (FactId f : cause) {
    if (instance.self_inconsistent(f)) {
      throw InstanceError("cause contains self-inconsistent fact " + instance.describe(f));
    }
  }
  std::vector<KeyClause> out;
  if (variant == NegVariant::Neg1) {
    KeyClause clause;
    for (FactId alpha : cause)
      for (FactId beta : instance.challengers(alpha)) clause.push_back(pos(VarKey::fact(beta, ns)));
    // Several cause facts can share a challenger.
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    out.push_back(std::move(clause));
  } else {
    KeyClause some_out;
    for (FactId alpha : cause) some_out.push_back(neg(VarKey::fact(alpha, ns)));
    out.push_back(std::move(some_out));
    for (FactId alpha : cause) {
      KeyClause clause{pos(VarKey::fact(alpha, ns))};
      for (FactId beta : instance.challengers(alpha)) clause.push_back(pos(VarKey::fact(beta, ns)));
      out.push_back(std::move(clause));
    }
  }
  if (activator) out.front().insert(out.front().begin(), neg(*activator));
  return out;
}

std::vector<KeyClause> encode_neg_query(const PrioritizedInstance& instance, std::uint32_t answer,
                                        NegVariant variant, bool multi) {
  const PotentialAnswer& a = instance.answers().at(answer);
  std::optional<VarKey> activator;
  if (multi) activator = VarKey::answer(answer);
  std::vector<KeyClause> out;
  for (const FactSet& cause : a.causes) {
    auto part = encode_neg_cause(instance, cause, variant, activator);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<KeyClause> encode_pos_cause(const FactSet& cause, std::uint32_t ns) {
  std::vector<KeyClause> out;
  for (FactId f : cause) out.push_back({pos(VarKey::fact(f, ns))});
  return out;
}

std::vector<KeyClause> encode_pos_query(const PrioritizedInstance& instance, std::uint32_t answer,
                                        bool multi) {
  const PotentialAnswer& a = instance.answers().at(answer);
  std::vector<KeyClause> out;
  KeyClause selector;
  if (multi) selector.push_back(neg(VarKey::answer(answer)));
  for (std::uint32_t i = 0; i < a.causes.size(); ++i)
    selector.push_back(pos(VarKey::cause_sel(answer, i)));
  out.push_back(std::move(selector));
  for (std::uint32_t i = 0; i < a.causes.size(); ++i)
    for (FactId f : a.causes[i])
      out.push_back({neg(VarKey::cause_sel(answer, i)), pos(VarKey::fact(f))});
  return out;
}

std::vector<KeyClause> encode_consistency(const PrioritizedInstance& instance,
                                          const FactSet& scope, std::uint32_t ns) {
  std::vector<KeyClause> out;
  for (FactId alpha : scope)
    for (FactId beta : instance.contradictors(alpha))
      if (alpha < beta && contains(scope, beta))
        out.push_back({neg(VarKey::fact(alpha, ns)), neg(VarKey::fact(beta, ns))});
  return out;
}

namespace {

MaxEncoding encode_p1(const PrioritizedInstance& instance, const FactSet& scope, std::uint32_t ns) {
  MaxEncoding out;
  out.used_facts = reachable_set(instance.graph(), scope);
  for (FactId alpha : out.used_facts) {
    KeyClause clause{pos(VarKey::fact(alpha, ns))};
    for (FactId beta : instance.challengers(alpha)) clause.push_back(pos(VarKey::fact(beta, ns)));
    out.clauses.push_back(std::move(clause));
  }
  return out;
}

MaxEncoding encode_p2(const PrioritizedInstance& instance, const FactSet& scope, std::uint32_t ns) {
  MaxEncoding out;
  const FactSet closure = reachable_minus_set(instance, scope);
  std::vector<FactId> used(closure.begin(), closure.end());
  for (FactId alpha : closure) {
    for (FactId beta : instance.dominators(alpha)) {
      KeyClause clause{neg(VarKey::fact(alpha, ns))};
      for (FactId gamma : instance.challengers(beta)) {
        clause.push_back(pos(VarKey::fact(gamma, ns)));
        used.push_back(gamma);
      }
      out.clauses.push_back(std::move(clause));
    }
  }
  out.used_facts = make_fact_set(std::move(used));
  return out;
}

MaxEncoding encode_c(const PrioritizedInstance& instance, const FactSet& scope,
                     const MaxOptions& options, std::uint32_t ns) {
  MaxEncoding out;
  const FactSet nodes = reachable_set(instance.graph(), scope);
  if (nodes.size() > options.c_node_cap) {
    throw CapacityError("completion encoding over " + std::to_string(nodes.size()) +
                        " facts exceeds the cap of " + std::to_string(options.c_node_cap));
  }
  out.used_facts = nodes;
  auto x = [ns](FactId f) { return VarKey::fact(f, ns); };
  auto edge = [ns](FactId from, FactId to) { return VarKey::pref_edge(from, to, ns); };
  auto order = [ns](FactId w, FactId l) { return VarKey::comp_order(w, l, ns); };
  auto trans = [ns](FactId from, FactId to) { return VarKey::trans(from, to, ns); };

  // Ordered conflicting pairs inside the node set.
  std::vector<std::pair<FactId, FactId>> ordered;
  for (FactId alpha : nodes)
    for (FactId beta : instance.contradictors(alpha))
      if (contains(nodes, beta)) ordered.emplace_back(alpha, beta);

  auto& cl = out.clauses;
  for (FactId alpha : nodes) {
    KeyClause clause{pos(x(alpha))};
    for (FactId beta : instance.contradictors(alpha))
      if (contains(nodes, beta)) clause.push_back(pos(edge(beta, alpha)));
    cl.push_back(std::move(clause));
  }
  for (auto [alpha, beta] : ordered) {
    cl.push_back({neg(edge(beta, alpha)), pos(x(beta))});
    cl.push_back({neg(edge(beta, alpha)), pos(order(beta, alpha))});
  }

  for (auto [alpha, beta] : ordered) {
    if (alpha > beta) continue;
    cl.push_back({pos(order(alpha, beta)), pos(order(beta, alpha))});
    cl.push_back({neg(order(alpha, beta)), neg(order(beta, alpha))});
  }
  for (auto [alpha, beta] : ordered)
    if (instance.prefers(alpha, beta)) cl.push_back({pos(order(alpha, beta))});

  if (options.drop_acyc) return out;
  for (auto [alpha, beta] : ordered) {
    cl.push_back({neg(order(alpha, beta)), pos(trans(alpha, beta))});
    cl.push_back({neg(order(alpha, beta)), neg(trans(beta, alpha))});
  }
  for (FactId alpha : nodes)
    for (auto [beta, gamma] : ordered)
      cl.push_back({neg(trans(alpha, beta)), neg(order(beta, gamma)), pos(trans(alpha, gamma))});
  return out;
}

struct Assembled {
  std::vector<KeyClause> clauses;
  FactSet first;
  FactSet second;
};

// φ ∧ φ_max(facts(φ)) ∧ φ_cons(facts(φ) ∪ facts(φ_max)) within one namespace.
Assembled close_over(const PrioritizedInstance& instance, const EncodingSpec& spec,
                     std::vector<KeyClause> base, std::uint32_t ns) {
  Assembled out;
  out.first = facts_of(base, ns);
  MaxEncoding max = encode_max(instance, spec.max, out.first, spec.options, ns);
  out.second = set_union(out.first, max.used_facts);
  auto cons = encode_consistency(instance, out.second, ns);
  out.clauses = std::move(base);
  out.clauses.insert(out.clauses.end(), std::make_move_iterator(max.clauses.begin()),
                     std::make_move_iterator(max.clauses.end()));
  out.clauses.insert(out.clauses.end(), std::make_move_iterator(cons.begin()),
                     std::make_move_iterator(cons.end()));
  return out;
}

void append(CnfFormula& formula, Assembled part) {
  formula.add(part.clauses);
  formula.scope_first = set_union(formula.scope_first, part.first);
  formula.scope_second = set_union(formula.scope_second, part.second);
}

}  // namespace

MaxEncoding encode_max(const PrioritizedInstance& instance, MaxVariant variant,
                       const FactSet& scope, const MaxOptions& options, std::uint32_t ns) {
  switch (variant) {
    case MaxVariant::S: return {};
    case MaxVariant::P1: return encode_p1(instance, scope, ns);
    case MaxVariant::P2: return encode_p2(instance, scope, ns);
    case MaxVariant::C: return encode_c(instance, scope, options, ns);
  }
  return {};
}

CnfFormula build_single_formula(const PrioritizedInstance& instance, const EncodingSpec& spec,
                                const Target& target) {
  validate_spec(spec, instance);
  CnfFormula formula;
  switch (target.kind) {
    case Target::Kind::Answer:
      switch (spec.sem) {
        case Semantics::AR:
          append(formula,
                 close_over(instance, spec,
                            encode_neg_query(instance, target.answer, spec.neg, false), 0));
          break;
        case Semantics::Brave:
          append(formula,
                 close_over(instance, spec, encode_pos_query(instance, target.answer, false), 0));
          break;
        case Semantics::IAR: {
          const auto& causes = instance.answers().at(target.answer).causes;
          for (std::uint32_t i = 0; i < causes.size(); ++i) {
            const std::uint32_t ns = i + 1;
            append(formula,
                   close_over(instance, spec,
                              encode_neg_cause(instance, causes[i], spec.neg, std::nullopt, ns),
                              ns));
          }
          break;
        }
      }
      break;
    case Target::Kind::Cause:
      if (spec.sem == Semantics::Brave) {
        append(formula, close_over(instance, spec, encode_pos_cause(target.facts), 0));
      } else if (spec.sem == Semantics::IAR) {
        append(formula, close_over(instance, spec,
                                   encode_neg_cause(instance, target.facts, spec.neg), 0));
      } else {
        throw SpecError("cause targets are only defined for brave and IAR");
      }
      break;
    case Target::Kind::Fact:
      if (spec.sem != Semantics::IAR) throw SpecError("fact targets are only defined for IAR");
      append(formula,
             close_over(instance, spec, encode_neg_cause(instance, target.facts, spec.neg), 0));
      break;
  }
  return formula;
}

CnfFormula build_multi_formula(const PrioritizedInstance& instance, const EncodingSpec& spec,
                               const MultiTarget& target) {
  validate_spec(spec, instance);
  CnfFormula formula;
  if (target.kind == MultiTarget::Kind::Relevant) {
    if (spec.sem != Semantics::IAR) throw SpecError("fact targets are only defined for IAR");
    std::vector<KeyClause> base;
    for (FactId f : target.facts) {
      auto part = encode_neg_cause(instance, {f}, spec.neg, VarKey::assume_fact(f));
      base.insert(base.end(), part.begin(), part.end());
    }
    append(formula, close_over(instance, spec, std::move(base), 0));
    for (FactId f : target.facts) formula.add_soft(VarKey::assume_fact(f));
    return formula;
  }

  if (spec.sem == Semantics::IAR) {
    std::uint32_t ns = 0;
    for (std::uint32_t a : target.answers) {
      for (const FactSet& cause : instance.answers().at(a).causes) {
        ++ns;
        append(formula, close_over(instance, spec,
                                   encode_neg_cause(instance, cause, spec.neg,
                                                    VarKey::answer(a), ns),
                                   ns));
      }
    }
  } else {
    std::vector<KeyClause> base;
    for (std::uint32_t a : target.answers) {
      auto part = spec.sem == Semantics::AR ? encode_neg_query(instance, a, spec.neg, true)
                                            : encode_pos_query(instance, a, true);
      base.insert(base.end(), part.begin(), part.end());
    }
    append(formula, close_over(instance, spec, std::move(base), 0));
  }
  for (std::uint32_t a : target.answers) formula.add_soft(VarKey::answer(a));
  return formula;
}

}  // namespace orbits
