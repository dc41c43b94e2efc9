#include "orbits/filters.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace orbits {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Simple: return "simple";
    case Algorithm::AllMaxSAT: return "maxsat";
    case Algorithm::AllMUSes: return "muses";
    case Algorithm::Assumptions: return "assume";
    case Algorithm::CauseByCause: return "cause";
    case Algorithm::IARCauses: return "iarcauses";
    case Algorithm::IARFacts: return "iarfacts";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (Algorithm a : all_algorithms())
    if (to_string(a) == text) return a;
  return std::nullopt;
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::Simple,       Algorithm::AllMaxSAT, Algorithm::AllMUSes, Algorithm::Assumptions,
          Algorithm::CauseByCause, Algorithm::IARCauses, Algorithm::IARFacts};
}

bool algorithm_supports(Algorithm a, Semantics sem) {
  switch (a) {
    case Algorithm::CauseByCause: return sem != Semantics::AR;
    case Algorithm::IARCauses:
    case Algorithm::IARFacts: return sem == Semantics::IAR;
    default: return true;
  }
}

std::string_view to_string(AnswerClass c) {
  switch (c) {
    case AnswerClass::Trivial: return "trivial";
    case AnswerClass::IARNonTrivial: return "IAR\\trivial";
    case AnswerClass::ARNotIAR: return "AR\\IAR";
    case AnswerClass::BraveNotAR: return "brave\\AR";
    case AnswerClass::NotBrave: return "not-brave";
  }
  return "?";
}

void FilterStats::absorb(const SolverStats& s) {
  solver_calls += s.solves;
  decisions += s.decisions;
  conflicts += s.conflicts;
  propagations += s.propagations;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void count_formula(FilterStats& stats, const CnfFormula& f) {
  stats.variables += static_cast<std::uint64_t>(f.num_vars());
  stats.clauses += f.hard.size();
}

std::vector<std::uint32_t> answer_indices(const PrioritizedInstance& instance) {
  std::vector<std::uint32_t> out(instance.answers().size());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

// Runs body and records budget exhaustion in the report instead of failing.
template <typename Body>
FilterReport run_guarded(const FilterRequest& request, Body body) {
  FilterReport report;
  const auto start = Clock::now();
  std::vector<char> holds(request.instance.answers().size(), 0);
  try {
    body(report, holds);
  } catch (const BudgetExhausted& e) {
    report.complete = false;
    report.note = e.what();
  }
  for (std::size_t i = 0; i < holds.size(); ++i)
    if (holds[i]) report.answers.push_back(request.instance.answers()[i].id);
  report.filter_ms = ms_since(start);
  return report;
}

bool keep_on_sat(Semantics sem) { return sem == Semantics::Brave; }

}  // namespace

void validate_request(const FilterRequest& request) {
  if (!algorithm_supports(request.algorithm, request.spec.sem)) {
    throw SpecError("algorithm " + std::string(to_string(request.algorithm)) +
                    " does not support " + std::string(to_string(request.spec.sem)) +
                    " semantics");
  }
  validate_spec(request.spec, instance_for_repair(request.instance, request.spec.repair));
}

FilterReport filter_simple(const FilterRequest& request) {
  return run_guarded(request, [&](FilterReport& report, std::vector<char>& holds) {
    for (std::uint32_t a : answer_indices(request.instance)) {
      const CnfFormula f =
          build_single_formula(request.instance, request.spec, Target::of_answer(a));
      count_formula(report.stats, f);
      SolverSession session(f, request.engine);
      const bool sat = session.solve().sat();
      report.stats.absorb(session.stats());
      holds[a] = sat == keep_on_sat(request.spec.sem);
    }
  });
}

FilterReport filter_all_maxsat(const FilterRequest& request) {
  const Semantics sem = request.spec.sem;
  std::vector<char> observed;
  bool finished = false;
  FilterReport report = run_guarded(request, [&](FilterReport& rep, std::vector<char>& holds) {
    const auto answers = answer_indices(request.instance);
    observed.assign(answers.size(), 0);
    if (!answers.empty()) {
      const CnfFormula f = build_multi_formula(request.instance, request.spec,
                                               MultiTarget::of_answers(answers));
      count_formula(rep.stats, f);
      SolverSession session(f, request.engine);
      std::vector<int> assumed;
      std::size_t seen = 0;
      try {
        while (seen < answers.size()) {
          const SolveResult r = session.maximize_soft(f.soft_units, assumed);
          if (!r.sat()) break;
          bool fresh = false;
          for (std::size_t i = 0; i < answers.size(); ++i) {
            if (!observed[i] && r.value(f.soft_units[i])) {
              observed[i] = 1;
              ++seen;
              assumed.push_back(-f.soft_units[i]);
              fresh = true;
            }
          }
          // Answers of the IAR encoding use disjoint variables, so one optimum
          // already satisfies every satisfiable soft unit.
          if (!fresh || sem == Semantics::IAR) break;
        }
      } catch (...) {
        rep.stats.absorb(session.stats());
        throw;
      }
      rep.stats.absorb(session.stats());
    }
    finished = true;
    for (std::size_t i = 0; i < observed.size(); ++i)
      holds[i] = keep_on_sat(sem) ? observed[i] : !observed[i];
  });
  if (!finished && keep_on_sat(sem)) {
    // Observed answers are witnessed by a model even when the loop was cut short.
    for (std::size_t i = 0; i < observed.size(); ++i)
      if (observed[i]) report.answers.push_back(request.instance.answers()[i].id);
  }
  return report;
}

FilterReport filter_all_muses(const FilterRequest& request) {
  return run_guarded(request, [&](FilterReport& report, std::vector<char>& holds) {
    const auto answers = answer_indices(request.instance);
    if (answers.empty()) return;
    const CnfFormula f =
        build_multi_formula(request.instance, request.spec, MultiTarget::of_answers(answers));
    count_formula(report.stats, f);
    const MusEnumeration muses = enumerate_mus(f, f.soft_units, request.engine);
    ++report.stats.solver_calls;
    for (std::size_t i = 0; i < answers.size(); ++i) {
      const std::vector<int> single{f.soft_units[i]};
      const bool singleton =
          muses.hard_unsat ||
          std::find(muses.muses.begin(), muses.muses.end(), single) != muses.muses.end();
      holds[i] = keep_on_sat(request.spec.sem) ? !singleton : singleton;
    }
  });
}

FilterReport filter_assumptions(const FilterRequest& request) {
  return run_guarded(request, [&](FilterReport& report, std::vector<char>& holds) {
    const auto answers = answer_indices(request.instance);
    if (answers.empty()) return;
    const CnfFormula f =
        build_multi_formula(request.instance, request.spec, MultiTarget::of_answers(answers));
    count_formula(report.stats, f);
    SolverSession session(f, request.engine);
    try {
      for (std::size_t i = 0; i < answers.size(); ++i) {
        const int x = f.soft_units[i];
        const bool sat = session.solve_assuming(std::span<const int>(&x, 1)).sat();
        holds[i] = sat == keep_on_sat(request.spec.sem);
      }
    } catch (...) {
      report.stats.absorb(session.stats());
      throw;
    }
    report.stats.absorb(session.stats());
  });
}

FilterReport filter_cause_by_cause(const FilterRequest& request) {
  if (request.spec.sem == Semantics::AR) throw SpecError("cause-by-cause needs brave or IAR");
  return run_guarded(request, [&](FilterReport& report, std::vector<char>& holds) {
    for (std::uint32_t a : answer_indices(request.instance)) {
      for (const FactSet& cause : request.instance.answers()[a].causes) {
        const CnfFormula f =
            build_single_formula(request.instance, request.spec, Target::of_cause(cause));
        count_formula(report.stats, f);
        SolverSession session(f, request.engine);
        const bool sat = session.solve().sat();
        report.stats.absorb(session.stats());
        if (sat == keep_on_sat(request.spec.sem)) {
          holds[a] = 1;
          break;
        }
      }
    }
  });
}

FilterReport filter_iar_causes(const FilterRequest& request) {
  if (request.spec.sem != Semantics::IAR) throw SpecError("IAR-causes needs IAR semantics");
  return run_guarded(request, [&](FilterReport& report, std::vector<char>& holds) {
    std::set<FactId> iar;
    std::set<FactId> non_iar;
    for (std::uint32_t a : answer_indices(request.instance)) {
      for (const FactSet& cause : request.instance.answers()[a].causes) {
        if (holds[a]) break;
        if (std::any_of(cause.begin(), cause.end(), [&](FactId f) { return non_iar.contains(f); }))
          continue;
        bool all_iar = true;
        for (FactId f : cause) {
          if (iar.contains(f)) continue;
          const CnfFormula phi =
              build_single_formula(request.instance, request.spec, Target::of_fact(f));
          count_formula(report.stats, phi);
          SolverSession session(phi, request.engine);
          const bool sat = session.solve().sat();
          report.stats.absorb(session.stats());
          if (sat) {
            non_iar.insert(f);
            all_iar = false;
            break;
          }
          iar.insert(f);
        }
        if (all_iar) holds[a] = 1;
      }
    }
  });
}

FilterReport filter_iar_facts(const FilterRequest& request) {
  if (request.spec.sem != Semantics::IAR) throw SpecError("IAR-facts needs IAR semantics");
  return run_guarded(request, [&](FilterReport& report, std::vector<char>& holds) {
    std::set<FactId> iar;
    std::set<FactId> non_iar;
    for (std::uint32_t a : answer_indices(request.instance)) {
      const auto& causes = request.instance.answers()[a].causes;
      FactSet relevant;
      for (const FactSet& cause : causes)
        for (FactId f : cause)
          if (!iar.contains(f) && !non_iar.contains(f)) relevant.push_back(f);
      relevant = make_fact_set(std::move(relevant));

      if (!relevant.empty()) {
        const CnfFormula f =
            build_multi_formula(request.instance, request.spec, MultiTarget::of_relevant(relevant));
        count_formula(report.stats, f);
        SolverSession session(f, request.engine);
        std::vector<char> out_of_some(relevant.size(), 0);
        std::size_t found = 0;
        std::vector<int> assumed;
        try {
          while (found < relevant.size()) {
            const SolveResult r = session.maximize_soft(f.soft_units, assumed);
            if (!r.sat()) break;
            bool fresh = false;
            for (std::size_t i = 0; i < relevant.size(); ++i) {
              if (!out_of_some[i] && r.value(f.soft_units[i])) {
                out_of_some[i] = 1;
                ++found;
                assumed.push_back(-f.soft_units[i]);
                fresh = true;
              }
            }
            if (!fresh) break;
          }
        } catch (...) {
          report.stats.absorb(session.stats());
          throw;
        }
        report.stats.absorb(session.stats());
        for (std::size_t i = 0; i < relevant.size(); ++i)
          (out_of_some[i] ? non_iar : iar).insert(relevant[i]);
      }
      for (const FactSet& cause : causes) {
        if (std::all_of(cause.begin(), cause.end(), [&](FactId f) { return iar.contains(f); })) {
          holds[a] = 1;
          break;
        }
      }
    }
  });
}

FilterReport answer_query(const FilterRequest& request) {
  validate_request(request);
  const auto start = Clock::now();
  SelfInconsistencyReport removed;
  const PrioritizedInstance cleaned = remove_self_inconsistent(
      instance_for_repair(request.instance, request.spec.repair), &removed);
  TrivialSplit split = extract_trivial_answers(cleaned);
  const double preprocess_ms = ms_since(start);

  FilterRequest sub{std::move(split.reduced), request.spec, request.algorithm, request.engine};
  FilterReport report;
  if (!sub.instance.answers().empty()) {
    switch (request.algorithm) {
      case Algorithm::Simple: report = filter_simple(sub); break;
      case Algorithm::AllMaxSAT: report = filter_all_maxsat(sub); break;
      case Algorithm::AllMUSes: report = filter_all_muses(sub); break;
      case Algorithm::Assumptions: report = filter_assumptions(sub); break;
      case Algorithm::CauseByCause: report = filter_cause_by_cause(sub); break;
      case Algorithm::IARCauses: report = filter_iar_causes(sub); break;
      case Algorithm::IARFacts: report = filter_iar_facts(sub); break;
    }
  }
  report.preprocess_ms = preprocess_ms;
  report.removed_self_inconsistent = removed.removed_facts;
  report.trivial = split.trivial;

  const std::set<std::string> kept(report.answers.begin(), report.answers.end());
  const std::set<std::string> trivial(split.trivial.begin(), split.trivial.end());
  report.answers.clear();
  for (const PotentialAnswer& a : request.instance.answers())
    if (kept.contains(a.id) || trivial.contains(a.id)) report.answers.push_back(a.id);
  return report;
}

std::vector<ClassifiedAnswer> classify_answers(const PrioritizedInstance& instance,
                                               const EncodingSpec& spec, Algorithm algorithm,
                                               EngineOptions engine) {
  auto run = [&](Semantics sem) {
    EncodingSpec s = spec;
    s.sem = sem;
    const Algorithm algo = algorithm_supports(algorithm, sem) ? algorithm : Algorithm::Simple;
    const FilterReport r = answer_query({instance, s, algo, engine});
    if (!r.complete) throw BudgetExhausted("classification incomplete: " + r.note);
    return r;
  };
  const FilterReport iar = run(Semantics::IAR);
  const FilterReport ar = run(Semantics::AR);
  const FilterReport brave = run(Semantics::Brave);
  auto in = [](const std::vector<std::string>& ids, const std::string& id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
  };
  std::vector<ClassifiedAnswer> out;
  for (const PotentialAnswer& a : instance.answers()) {
    AnswerClass cls = AnswerClass::NotBrave;
    if (in(iar.trivial, a.id)) {
      cls = AnswerClass::Trivial;
    } else if (in(iar.answers, a.id)) {
      cls = AnswerClass::IARNonTrivial;
    } else if (in(ar.answers, a.id)) {
      cls = AnswerClass::ARNotIAR;
    } else if (in(brave.answers, a.id)) {
      cls = AnswerClass::BraveNotAR;
    }
    out.push_back({a.id, cls});
  }
  return out;
}

}  // namespace orbits
