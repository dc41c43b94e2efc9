#include <gtest/gtest.h>

#include "orbits/filters.hpp"
#include "orbits/generate.hpp"
#include "orbits/oracle.hpp"
#include "test_support.hpp"

using namespace orbits;
using namespace orbits::testing;

namespace {

FilterReport run(const PrioritizedInstance& inst, Semantics sem, RepairType repair, MaxVariant max,
                 Algorithm algo, NegVariant neg = NegVariant::Neg1) {
  return answer_query({inst, {sem, repair, max, neg, {}}, algo, {}});
}

const std::vector<std::string> kYes = {"q(a)"};
const std::vector<std::string> kNo = {};

}  // namespace

TEST(Filters, ExampleVerdictsEveryAlgorithm) {
  const PrioritizedInstance inst = example_instance();
  for (Algorithm algo : all_algorithms()) {
    for (NegVariant neg : {NegVariant::Neg1, NegVariant::Neg2}) {
      if (algorithm_supports(algo, Semantics::IAR)) {
        EXPECT_EQ(run(inst, Semantics::IAR, RepairType::C, MaxVariant::C, algo, neg).answers, kYes);
        EXPECT_EQ(run(inst, Semantics::IAR, RepairType::P, MaxVariant::P1, algo, neg).answers, kNo);
        EXPECT_EQ(run(inst, Semantics::IAR, RepairType::P, MaxVariant::P2, algo, neg).answers, kNo);
      }
      if (algorithm_supports(algo, Semantics::AR)) {
        EXPECT_EQ(run(inst, Semantics::AR, RepairType::P, MaxVariant::P1, algo, neg).answers, kYes);
        EXPECT_EQ(run(inst, Semantics::AR, RepairType::P, MaxVariant::P2, algo, neg).answers, kYes);
      }
      if (algorithm_supports(algo, Semantics::Brave)) {
        EXPECT_EQ(run(inst, Semantics::Brave, RepairType::P, MaxVariant::P1, algo, neg).answers, kYes);
      }
    }
  }
}

TEST(Filters, PairingRules) {
  const PrioritizedInstance inst = example_instance();
  EXPECT_THROW(run(inst, Semantics::Brave, RepairType::S, MaxVariant::S, Algorithm::IARCauses),
               SpecError);
  EXPECT_THROW(run(inst, Semantics::AR, RepairType::P, MaxVariant::P1, Algorithm::CauseByCause),
               SpecError);
  EXPECT_THROW(run(inst, Semantics::AR, RepairType::P, MaxVariant::C, Algorithm::Simple), SpecError);
}

TEST(Filters, RemoveSelfInconsistent) {
  ConflictSet c;
  c.add_self_inconsistent(0);
  c.add(0, 1);
  c.normalize();
  const auto inst = PrioritizedInstance::with_dense_facts(
      2, c, {}, {{"two", {{0}, {1}}}, {"gone", {{0}}}});
  SelfInconsistencyReport report;
  const PrioritizedInstance out = remove_self_inconsistent(inst, &report);
  ASSERT_EQ(out.answers().size(), 1u);
  EXPECT_EQ(out.answers()[0].causes, (std::vector<FactSet>{{1}}));
  EXPECT_EQ(report.dropped_answers, (std::vector<std::string>{"gone"}));
  EXPECT_TRUE(out.conflicts().pairs.empty());

  const PrioritizedInstance clean = example_instance();
  EXPECT_EQ(remove_self_inconsistent(clean).answers().size(), 1u);
}

TEST(Filters, TrivialAnswers) {
  EXPECT_TRUE(extract_trivial_answers(example_instance()).trivial.empty());
  ConflictSet c;
  c.add(0, 1);
  c.normalize();
  PriorityRelation p;
  p.add(0, 1);
  const auto inst = PrioritizedInstance::with_dense_facts(3, c, p, {{"t", {{0}}}, {"free", {{2}}}, {"n", {{1}}}});
  const TrivialSplit split = extract_trivial_answers(inst);
  EXPECT_EQ(split.trivial, (std::vector<std::string>{"t", "free"}));
  ASSERT_EQ(split.reduced.answers().size(), 1u);
}

TEST(Filters, OnlyTrivialAnswersSkipSolver) {
  const auto inst = PrioritizedInstance::with_dense_facts(2, {}, {}, {{"a", {{0}}}, {"b", {{1}}}});
  for (Semantics sem : {Semantics::AR, Semantics::IAR, Semantics::Brave}) {
    const FilterReport r =
        run(inst, sem, RepairType::S, MaxVariant::S, Algorithm::AllMaxSAT);
    EXPECT_EQ(r.answers, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(r.stats.solver_calls, 0u);
  }
}

TEST(Filters, Classification) {
  const PrioritizedInstance inst = example_instance();
  auto c = classify_answers(inst, {Semantics::AR, RepairType::C, MaxVariant::C, NegVariant::Neg1, {}});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].cls, AnswerClass::IARNonTrivial);
  c = classify_answers(inst, {Semantics::AR, RepairType::P, MaxVariant::P1, NegVariant::Neg1, {}});
  EXPECT_EQ(c[0].cls, AnswerClass::ARNotIAR);
  const auto free = PrioritizedInstance::with_dense_facts(1, {}, {}, {{"f", {{0}}}});
  c = classify_answers(free, {Semantics::AR, RepairType::P, MaxVariant::P1, NegVariant::Neg1, {}});
  EXPECT_EQ(c[0].cls, AnswerClass::Trivial);
}

TEST(Filters, BudgetMarksIncomplete) {
  bool saw_incomplete = false;
  for (std::uint64_t seed = 0; seed < 20 && !saw_incomplete; ++seed) {
    InstanceParams params;
    params.facts = 40;
    params.conflicts = 300;
    params.answers = 6;
    params.max_cause_size = 3;
    params.seed = seed;
    const PrioritizedInstance inst = random_instance(params);
    const EncodingSpec spec{Semantics::AR, RepairType::P, MaxVariant::P1, NegVariant::Neg1, {}};
    const FilterReport partial = answer_query({inst, spec, Algorithm::Simple, {0, 0}});
    if (partial.complete) continue;
    saw_incomplete = true;
    const FilterReport full = answer_query({inst, spec, Algorithm::Simple, {}});
    ASSERT_TRUE(full.complete);
    for (const std::string& id : partial.answers)
      EXPECT_NE(std::find(full.answers.begin(), full.answers.end(), id), full.answers.end());
  }
  EXPECT_TRUE(saw_incomplete);
}

TEST(Filters, AlgorithmsAgreeOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceParams params;
    params.facts = 7;
    params.conflicts = 8;
    params.answers = 3;
    params.seed = seed;
    PrioritizedInstance inst = random_instance(params);
    inst = inst.with_priority(generate_priority(inst, {PriorityParams::Mode::Random, 0, 0.5, seed}));
    for (Semantics sem : {Semantics::AR, Semantics::IAR, Semantics::Brave}) {
      const auto want = oracle_answers(inst, sem, RepairType::P);
      for (Algorithm algo : all_algorithms())
        if (algorithm_supports(algo, sem))
          EXPECT_EQ(run(inst, sem, RepairType::P, MaxVariant::P2, algo).answers, want)
              << "seed " << seed << " " << to_string(algo);
    }
  }
}
