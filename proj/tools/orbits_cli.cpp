// orbits: filter candidate query answers under optimal-repair semantics.
//
// Exit codes: 0 ok, 1 input/verification failure, 2 usage or invalid
// combination, 3 solver budget exhausted (partial result written), 4 an
// instance exceeds an encoding or oracle capacity limit.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbits/cnf.hpp"
#include "orbits/encoder.hpp"
#include "orbits/filters.hpp"
#include "orbits/generate.hpp"
#include "orbits/instance_io.hpp"
#include "orbits/verify.hpp"

using namespace orbits;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3, kCapacity = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FilterArgs {
  std::string sem = "ar";
  std::string repair = "p1";
  std::string max;
  std::string neg = "1";
  std::string algo = "simple";
  std::string kb;
  std::string ans;
  std::string out;
  std::string dump_cnf;
  std::uint64_t seed = 0;
  std::int64_t budget = -1;
};

void add_instance_flags(CLI::App* cmd, FilterArgs& a) {
  cmd->add_option("--kb", a.kb, "knowledge base JSON")->required();
  cmd->add_option("--ans", a.ans, "potential answers JSON")->required();
}

EncodingSpec make_spec(const std::string& sem, const std::string& repair, const std::string& neg,
                       const std::string& max) {
  EncodingSpec spec;
  const auto s = parse_semantics(sem);
  if (!s) throw UsageError("unknown semantics: " + sem);
  spec.sem = *s;
  std::string r = repair;
  std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto rt = parse_repair(r);
  if (!rt) throw UsageError("unknown repair type: " + repair);
  spec.repair = *rt;
  spec.max = r == "p2" ? MaxVariant::P2 : default_max(spec.repair);
  if (!max.empty()) {
    const auto m = parse_max(max);
    if (!m) throw UsageError("unknown maximality encoding: " + max);
    spec.max = *m;
  }
  const auto n = parse_neg(neg);
  if (!n) throw UsageError("unknown negation variant: " + neg);
  spec.neg = *n;
  return spec;
}

Algorithm make_algorithm(const std::string& text) {
  const auto a = parse_algorithm(text);
  if (!a) throw UsageError("unknown algorithm: " + text);
  return *a;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

void dump_cnf(const FilterRequest& request, const std::string& path) {
  const PrioritizedInstance base = remove_self_inconsistent(
      instance_for_repair(request.instance, request.spec.repair));
  const PrioritizedInstance reduced = extract_trivial_answers(base).reduced;
  CnfFormula formula;
  if (request.algorithm == Algorithm::IARFacts) {
    FactSet relevant;
    for (const PotentialAnswer& a : reduced.answers())
      for (const FactSet& c : a.causes) relevant = set_union(relevant, c);
    formula = build_multi_formula(reduced, request.spec, MultiTarget::of_relevant(relevant));
  } else {
    std::vector<std::uint32_t> ids;
    for (std::uint32_t i = 0; i < reduced.answers().size(); ++i) ids.push_back(i);
    formula = build_multi_formula(reduced, request.spec, MultiTarget::of_answers(ids));
  }
  write_text_file(path, to_dimacs(formula, !formula.soft_units.empty()));
}

int run_filter(const FilterArgs& a) {
  const EncodingSpec spec = make_spec(a.sem, a.repair, a.neg, a.max);
  const Algorithm algo = make_algorithm(a.algo);
  const LoadedInstance loaded = load_instance(a.kb, a.ans);
  FilterRequest request{loaded.instance, spec, algo, {a.budget, a.seed}};
  validate_request(request);
  if (!a.dump_cnf.empty()) dump_cnf(request, a.dump_cnf);
  const FilterReport report = answer_query(request);
  emit(a.out, result_to_json(report, spec, algo));
  if (!report.complete) {
    std::cerr << "budget exhausted: " << report.note << "\n";
    return kBudget;
  }
  return kOk;
}

struct GenPriorityArgs {
  std::string kb;
  std::string ans;
  std::string mode;
  std::uint32_t levels = 2;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_genpriority(const GenPriorityArgs& a) {
  const std::string answers = a.ans.empty() ? "{}" : read_text_file(a.ans);
  const LoadedInstance loaded = parse_instance(read_text_file(a.kb), answers);
  PriorityParams params;
  if (a.mode == "score") {
    params.mode = PriorityParams::Mode::Score;
  } else if (a.mode == "random") {
    params.mode = PriorityParams::Mode::Random;
  } else {
    throw UsageError("--mode must be score or random");
  }
  params.levels = a.levels;
  params.p = a.p;
  params.seed = a.seed;
  PriorityRelation priority;
  try {
    priority = generate_priority(loaded.instance, params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(a.out, kb_to_json_with_structure(loaded.instance.with_priority(std::move(priority))));
  return kOk;
}

struct GenInstanceArgs {
  InstanceParams params;
  std::string kb_out;
  std::string ans_out;
};

int run_geninstance(const GenInstanceArgs& a) {
  PrioritizedInstance inst;
  try {
    inst = random_instance(a.params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(a.kb_out, kb_to_json(inst));
  emit(a.ans_out, answers_to_json(inst, "q"));
  return kOk;
}

struct VerifyArgs {
  VerifyOptions options;
  std::string kb;
  std::string ans;
  std::string mutate;
};

int run_verify(VerifyArgs a) {
  if (!a.mutate.empty()) {
    if (a.mutate != "drop-acyc") throw UsageError("unknown mutant: " + a.mutate);
    a.options.drop_acyc = true;
  }
  if (a.kb.empty() != a.ans.empty()) throw UsageError("--kb and --ans go together");
  if (!a.kb.empty()) a.options.fixture = load_instance(a.kb, a.ans).instance;
  const auto start = std::chrono::steady_clock::now();
  const VerifyReport r = run_verification(a.options);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "instances: " << r.instances << " (score-structured " << r.score_structured
            << ", skipped " << r.skipped << ")\n"
            << "configurations checked: " << r.checks << "\n"
            << "containment checks: " << r.containment_checks << "\n"
            << "mismatches: " << r.mismatch_count << "\n"
            << "containment violations: " << r.violation_count << "\n"
            << "time: " << std::fixed << std::setprecision(2) << secs << " s\n";
  if (r.first_mismatch) std::cout << "first mismatch:\n" << r.first_mismatch->describe();
  if (r.first_violation) std::cout << "first violation:\n" << r.first_violation->describe();
  return r.ok() ? kOk : kFailure;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct BenchArgs {
  FilterArgs filter;
  int repeat = 1;
};

int run_bench(const BenchArgs& a) {
  if (a.repeat < 1) throw UsageError("--repeat must be positive");
  const LoadedInstance loaded = load_instance(a.filter.kb, a.filter.ans);
  std::ostringstream csv;
  csv << "semantics,repair,encoding,algorithm,preprocess_ms,filter_ms,result_count\n";
  bool budget_hit = false;
  for (const std::string& sem : split_list(a.filter.sem))
    for (const std::string& repair : split_list(a.filter.repair))
      for (const std::string& neg : split_list(a.filter.neg))
        for (const std::string& algo_text : split_list(a.filter.algo)) {
          const EncodingSpec spec = make_spec(sem, repair, neg, a.filter.max);
          const Algorithm algo = make_algorithm(algo_text);
          FilterRequest request{loaded.instance, spec, algo, {a.filter.budget, a.filter.seed}};
          try {
            validate_request(request);
          } catch (const SpecError& e) {
            std::cerr << "skipping " << sem << "/" << repair << "/" << neg << "/" << algo_text
                      << ": " << e.what() << "\n";
            continue;
          }
          double pre = 0;
          double filt = 0;
          std::size_t count = 0;
          for (int i = 0; i < a.repeat; ++i) {
            const FilterReport r = answer_query(request);
            pre += r.preprocess_ms;
            filt += r.filter_ms;
            count = r.answers.size();
            if (!r.complete) budget_hit = true;
          }
          csv << to_string(spec.sem) << ',' << to_string(spec.repair) << ','
              << to_string(spec.max) << '+' << to_string(spec.neg) << ',' << to_string(algo)
              << ',' << std::fixed << std::setprecision(3) << pre / a.repeat << ','
              << filt / a.repeat << ',' << count << '\n';
        }
  emit(a.filter.out, csv.str());
  return budget_hit ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filter query answers under optimal-repair semantics with a SAT solver"};
  app.require_subcommand(1);

  FilterArgs filter;
  auto* cmd_filter = app.add_subcommand("filter", "filter potential answers");
  cmd_filter->add_option("--sem", filter.sem, "ar | iar | brave")->required();
  cmd_filter->add_option("--repair", filter.repair, "s | p1 | p2 | c")->required();
  cmd_filter->add_option("--max", filter.max, "override maximality encoding: s | p1 | p2 | c");
  cmd_filter->add_option("--neg", filter.neg, "1 | 2");
  cmd_filter->add_option("--algo", filter.algo,
                         "simple | maxsat | muses | assume | cause | iarcauses | iarfacts");
  add_instance_flags(cmd_filter, filter);
  cmd_filter->add_option("--out", filter.out, "result JSON (default stdout)");
  cmd_filter->add_option("--seed", filter.seed, "solver seed");
  cmd_filter->add_option("--budget", filter.budget, "conflict budget per solver call");
  cmd_filter->add_option("--dump-cnf", filter.dump_cnf, "write the multi-answer formula as (W)CNF");

  GenPriorityArgs genp;
  auto* cmd_genp = app.add_subcommand("genpriority", "attach a generated priority relation");
  cmd_genp->add_option("--kb", genp.kb, "knowledge base JSON")->required();
  cmd_genp->add_option("--ans", genp.ans, "answers JSON (optional, for implicit fact ids)");
  cmd_genp->add_option("--mode", genp.mode, "score | random")->required();
  cmd_genp->add_option("--levels", genp.levels, "number of score levels");
  cmd_genp->add_option("--p", genp.p, "orientation probability");
  cmd_genp->add_option("--seed", genp.seed);
  cmd_genp->add_option("--out", genp.out, "output kb JSON (default stdout)");

  GenInstanceArgs geni;
  auto* cmd_geni = app.add_subcommand("geninstance", "generate a random instance");
  cmd_geni->add_option("--facts", geni.params.facts)->required();
  cmd_geni->add_option("--conflicts", geni.params.conflicts)->required();
  cmd_geni->add_option("--answers", geni.params.answers);
  cmd_geni->add_option("--max-cause-size", geni.params.max_cause_size);
  cmd_geni->add_option("--max-causes", geni.params.max_causes);
  cmd_geni->add_option("--seed", geni.params.seed);
  cmd_geni->add_option("--kb-out", geni.kb_out, "kb JSON path")->required();
  cmd_geni->add_option("--ans-out", geni.ans_out, "answers JSON path")->required();

  VerifyArgs ver;
  auto* cmd_verify = app.add_subcommand("verify", "compare the SAT pipeline with the oracle");
  cmd_verify->add_option("--trials", ver.options.trials);
  cmd_verify->add_option("--max-facts", ver.options.max_facts);
  cmd_verify->add_option("--max-conflicts", ver.options.max_conflicts);
  cmd_verify->add_option("--seed", ver.options.seed);
  cmd_verify->add_option("--jobs", ver.options.jobs);
  cmd_verify->add_option("--kb", ver.kb, "extra instance checked first");
  cmd_verify->add_option("--ans", ver.ans);
  cmd_verify->add_option("--mutate", ver.mutate, "drop-acyc");
  cmd_verify->add_flag("--score-only", ver.options.score_only, "score-structured priorities only");

  BenchArgs bench;
  bench.filter.sem = "ar";
  bench.filter.algo = "simple";
  auto* cmd_bench = app.add_subcommand("bench", "time filter configurations (CSV)");
  cmd_bench->add_option("--sem", bench.filter.sem, "comma-separated semantics");
  cmd_bench->add_option("--repair", bench.filter.repair, "comma-separated repair types");
  cmd_bench->add_option("--max", bench.filter.max);
  cmd_bench->add_option("--neg", bench.filter.neg, "comma-separated negation variants");
  cmd_bench->add_option("--algo", bench.filter.algo, "comma-separated algorithms");
  add_instance_flags(cmd_bench, bench.filter);
  cmd_bench->add_option("--repeat", bench.repeat);
  cmd_bench->add_option("--budget", bench.filter.budget);
  cmd_bench->add_option("--seed", bench.filter.seed);
  cmd_bench->add_option("--out", bench.filter.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cmd_filter) return run_filter(filter);
    if (*cmd_genp) return run_genpriority(genp);
    if (*cmd_geni) return run_geninstance(geni);
    if (*cmd_verify) return run_verify(ver);
    if (*cmd_bench) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SpecError& e) {
    std::cerr << "invalid combination: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
