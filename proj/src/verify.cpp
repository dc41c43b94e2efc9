#include "orbits/verify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "orbits/instance_io.hpp"
#include "orbits/random.hpp"

namespace orbits {

namespace {

std::string join(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
  return out + "]";
}

bool includes_all(const std::vector<std::string>& big, const std::vector<std::string>& small) {
  return std::all_of(small.begin(), small.end(), [&](const std::string& id) {
    return std::find(big.begin(), big.end(), id) != big.end();
  });
}

bool family_subset(const RepairFamily& small, const RepairFamily& big) {
  return std::all_of(small.repairs.begin(), small.repairs.end(), [&](const FactSet& r) {
    return std::binary_search(big.repairs.begin(), big.repairs.end(), r);
  });
}

}  // namespace

std::string Configuration::label() const {
  std::string s = std::string(to_string(spec.sem)) + "/" + std::string(to_string(spec.repair)) +
                  "/" + std::string(to_string(spec.max)) + "/" + std::string(to_string(spec.neg)) +
                  "/" + std::string(to_string(algorithm));
  if (spec.options.drop_acyc) s += " (drop-acyc)";
  return s;
}

std::vector<Configuration> valid_configurations(const PrioritizedInstance& instance,
                                                const MaxOptions& options) {
  const bool structured = is_score_structured(instance.conflicts(), instance.priority());
  std::vector<Configuration> out;
  for (Semantics sem : {Semantics::AR, Semantics::IAR, Semantics::Brave}) {
    for (RepairType repair : {RepairType::S, RepairType::P, RepairType::C}) {
      std::vector<MaxVariant> maxes;
      switch (repair) {
        case RepairType::S: maxes = {MaxVariant::S}; break;
        case RepairType::P: maxes = {MaxVariant::P1, MaxVariant::P2}; break;
        case RepairType::C:
          maxes = {MaxVariant::C};
          if (structured) {
            maxes.push_back(MaxVariant::P1);
            maxes.push_back(MaxVariant::P2);
          }
          break;
      }
      for (MaxVariant max : maxes)
        for (NegVariant neg : {NegVariant::Neg1, NegVariant::Neg2})
          for (Algorithm algo : all_algorithms())
            if (algorithm_supports(algo, sem)) out.push_back({{sem, repair, max, neg, options}, algo});
    }
  }
  return out;
}

std::string Mismatch::describe() const {
  std::ostringstream os;
  os << where << ": " << configuration;
  if (!detail.empty()) os << ": " << detail;
  os << "\n  expected " << join(expected) << "\n  actual   " << join(actual) << "\n";
  os << "  kb: " << kb_json << "  answers: " << answers_json;
  return os.str();
}

InstanceCheck check_instance(const PrioritizedInstance& instance, const std::string& where,
                             const VerifyOptions& options) {
  InstanceCheck out;
  out.score_structured = is_score_structured(instance.conflicts(), instance.priority());
  auto make = [&](std::string configuration, std::vector<std::string> expected,
                  std::vector<std::string> actual, std::string detail) {
    return Mismatch{where,
                    std::move(configuration),
                    std::move(expected),
                    std::move(actual),
                    std::move(detail),
                    kb_to_json(instance),
                    answers_to_json(instance, "q")};
  };

  std::map<std::pair<int, int>, std::vector<std::string>> expected;
  try {
    const RepairFamily rep = enumerate_family(instance_for_repair(instance, RepairType::S),
                                              RepairType::S, options.limits);
    const RepairFamily prep = enumerate_family(instance, RepairType::P, options.limits);
    const RepairFamily crep = enumerate_family(instance, RepairType::C, options.limits);
    out.containment_checks += 2;
    if (!family_subset(crep, prep)) out.violations.push_back(make("CRep in PRep", {}, {}, "violated"));
    if (!family_subset(prep, rep)) out.violations.push_back(make("PRep in Rep", {}, {}, "violated"));
    if (out.score_structured) {
      ++out.containment_checks;
      if (prep.repairs != crep.repairs)
        out.violations.push_back(make("PRep == CRep (score-structured)", {}, {}, "violated"));
    }
    for (RepairType repair : {RepairType::S, RepairType::P, RepairType::C}) {
      const PrioritizedInstance base = instance_for_repair(instance, repair);
      const RepairFamily& fam =
          repair == RepairType::S ? rep : repair == RepairType::P ? prep : crep;
      for (Semantics sem : {Semantics::AR, Semantics::IAR, Semantics::Brave})
        expected[{static_cast<int>(sem), static_cast<int>(repair)}] = answers_over(base, fam, sem);
      const auto& iar = expected[{static_cast<int>(Semantics::IAR), static_cast<int>(repair)}];
      const auto& ar = expected[{static_cast<int>(Semantics::AR), static_cast<int>(repair)}];
      const auto& brave = expected[{static_cast<int>(Semantics::Brave), static_cast<int>(repair)}];
      const std::vector<std::string> trivial =
          extract_trivial_answers(remove_self_inconsistent(base)).trivial;
      const std::string r(to_string(repair));
      out.containment_checks += 3;
      if (!includes_all(ar, iar)) out.violations.push_back(make("IAR in AR, " + r, ar, iar, "violated"));
      if (!includes_all(brave, ar))
        out.violations.push_back(make("AR in brave, " + r, brave, ar, "violated"));
      if (!includes_all(iar, trivial))
        out.violations.push_back(make("trivial in IAR, " + r, iar, trivial, "violated"));
    }
  } catch (const CapacityError&) {
    out.skipped = true;
    return out;
  }

  MaxOptions max_options;
  max_options.drop_acyc = options.drop_acyc;
  for (const Configuration& config : valid_configurations(instance, max_options)) {
    ++out.checks;
    const auto& want =
        expected[{static_cast<int>(config.spec.sem), static_cast<int>(config.spec.repair)}];
    try {
      const FilterReport got = answer_query({instance, config.spec, config.algorithm, options.engine});
      if (!got.complete) {
        out.mismatches.push_back(make(config.label(), want, got.answers, "incomplete: " + got.note));
      } else if (got.answers != want) {
        out.mismatches.push_back(make(config.label(), want, got.answers, ""));
      }
    } catch (const std::exception& e) {
      out.mismatches.push_back(make(config.label(), want, {}, std::string("exception: ") + e.what()));
    }
  }
  return out;
}

PrioritizedInstance verification_instance(const VerifyOptions& options, std::size_t trial,
                                          std::string* priority_label) {
  const std::uint64_t seed = mix_seed(options.seed, trial);
  Rng rng(seed);
  InstanceParams params;
  params.facts = static_cast<std::size_t>(
      rng.between(2, static_cast<std::int64_t>(std::max<std::size_t>(2, options.max_facts))));
  const std::size_t max_pairs = params.facts * (params.facts - 1) / 2;
  params.conflicts = static_cast<std::size_t>(
      rng.between(0, static_cast<std::int64_t>(std::min(options.max_conflicts, max_pairs))));
  params.answers = options.answers;
  params.max_cause_size = options.max_cause_size;
  params.max_causes = 3;
  params.seed = rng.next();
  PrioritizedInstance base = random_instance(params);

  // occasionally one self-inconsistent fact
  if (rng.chance(0.1)) {
    ConflictSet conflicts = base.conflicts();
    conflicts.add_self_inconsistent(static_cast<FactId>(rng.below(params.facts)));
    conflicts.normalize();
    base = PrioritizedInstance(base.facts(), std::move(conflicts), {}, base.answers());
  }

  static const PriorityParams kModes[] = {
      {PriorityParams::Mode::None, 0, 0.0, 0},
      {PriorityParams::Mode::Score, 2, 0.0, 0},
      {PriorityParams::Mode::Score, 5, 0.0, 0},
      {PriorityParams::Mode::Random, 0, 0.5, 0},
      {PriorityParams::Mode::Random, 0, 0.8, 0},
  };
  PriorityParams mode = options.score_only ? kModes[1 + trial % 2] : kModes[trial % 5];
  mode.seed = rng.next();
  if (priority_label) *priority_label = mode.label();
  return base.with_priority(generate_priority(base, mode));
}

VerifyReport run_verification(const VerifyOptions& options) {
  struct Cell {
    std::string where;
    InstanceCheck result;
  };
  const std::size_t offset = options.fixture ? 1 : 0;
  std::vector<Cell> cells(options.trials + offset);

  auto run_cell = [&](std::size_t i) {
    if (i < offset) {
      cells[i].where = "fixture";
      cells[i].result = check_instance(*options.fixture, cells[i].where, options);
      return;
    }
    const std::size_t trial = i - offset;
    std::string label;
    const PrioritizedInstance inst = verification_instance(options, trial, &label);
    cells[i].where = "trial " + std::to_string(trial) + " (priority " + label + ")";
    cells[i].result = check_instance(inst, cells[i].where, options);
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    for (std::thread& t : pool) t.join();
  }

  VerifyReport report;
  for (const Cell& c : cells) {
    const InstanceCheck& r = c.result;
    ++report.instances;
    if (r.skipped) ++report.skipped;
    if (r.score_structured) ++report.score_structured;
    report.checks += r.checks;
    report.containment_checks += r.containment_checks;
    report.mismatch_count += r.mismatches.size();
    report.violation_count += r.violations.size();
    if (!report.first_mismatch && !r.mismatches.empty()) report.first_mismatch = r.mismatches.front();
    if (!report.first_violation && !r.violations.empty()) report.first_violation = r.violations.front();
  }
  return report;
}

}  // namespace orbits
