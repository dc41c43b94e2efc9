#include <gtest/gtest.h>

#include "orbits/oracle.hpp"
#include "test_support.hpp"

using namespace orbits;
using namespace orbits::testing;

TEST(Oracle, ExampleFamilies) {
  const PrioritizedInstance inst = example_instance();
  const std::vector<FactSet> both = {{kA, kG}, {kB, kD}};
  EXPECT_EQ(enumerate_repairs(inst).repairs, both);
  EXPECT_EQ(enumerate_pareto_repairs(inst).repairs, both);
  const RepairFamily c = enumerate_completion_repairs(inst);
  EXPECT_EQ(c.repairs, (std::vector<FactSet>{{kA, kG}}));
  EXPECT_EQ(c.completions, 3u);
}

TEST(Oracle, ExampleAnswers) {
  const PrioritizedInstance inst = example_instance();
  const std::vector<std::string> yes = {"q(a)"}, no = {};
  EXPECT_EQ(oracle_answers(inst, Semantics::AR, RepairType::P), yes);
  EXPECT_EQ(oracle_answers(inst, Semantics::IAR, RepairType::P), no);
  EXPECT_EQ(oracle_answers(inst, Semantics::IAR, RepairType::C), yes);
  EXPECT_EQ(oracle_answers(inst, Semantics::Brave, RepairType::P), yes);
  EXPECT_EQ(oracle_answers(inst, Semantics::IAR, RepairType::S), no);
}

TEST(Oracle, SmallCases) {
  const auto none = PrioritizedInstance::with_dense_facts(3, {}, {}, {});
  EXPECT_EQ(enumerate_repairs(none).repairs, (std::vector<FactSet>{{0, 1, 2}}));

  ConflictSet c;
  c.add(0, 1);
  c.normalize();
  const auto single = PrioritizedInstance::with_dense_facts(3, c, {}, {});
  EXPECT_EQ(enumerate_repairs(single).repairs, (std::vector<FactSet>{{0, 2}, {1, 2}}));
  EXPECT_EQ(enumerate_pareto_repairs(single).repairs, enumerate_repairs(single).repairs);
  const RepairFamily comp = enumerate_completion_repairs(single);
  EXPECT_EQ(comp.completions, 2u);
  EXPECT_EQ(comp.repairs.size(), 2u);

  PriorityRelation p;
  p.add(0, 1);
  const auto prio = single.with_priority(p);
  EXPECT_EQ(enumerate_pareto_repairs(prio).repairs, (std::vector<FactSet>{{0, 2}}));
  EXPECT_EQ(enumerate_completion_repairs(prio).completions, 1u);
}

TEST(Oracle, TotalPriorityHasOneCompletion) {
  const PrioritizedInstance inst = example_instance();
  PriorityRelation total = example_priority();
  total.add(kA, kD);
  total.add(kG, kB);
  total.normalize();
  const RepairFamily c = enumerate_completion_repairs(inst.with_priority(total));
  EXPECT_EQ(c.completions, 1u);
  EXPECT_EQ(c.repairs.size(), 1u);
}

TEST(Oracle, ParetoChecksAgree) {
  const PrioritizedInstance inst = example_instance();
  for (const FactSet& r : enumerate_repairs(inst).repairs)
    EXPECT_EQ(is_pareto_optimal(inst, r), is_pareto_optimal_full(inst, r));
  EXPECT_TRUE(is_consistent(inst, {kA, kG}));
  EXPECT_FALSE(is_consistent(inst, {kA, kB}));
}

TEST(Oracle, AnswerExtremes) {
  ConflictSet c;
  c.add(0, 1);
  c.normalize();
  const auto inst = PrioritizedInstance::with_dense_facts(3, c, {}, {{"free", {{2}}}, {"clash", {{0, 1}}}});
  for (Semantics sem : {Semantics::AR, Semantics::IAR, Semantics::Brave})
    for (RepairType r : {RepairType::S, RepairType::P, RepairType::C})
      EXPECT_EQ(oracle_answers(inst, sem, r), (std::vector<std::string>{"free"}));
}

TEST(Oracle, SelfInconsistentFactsAreUnusable) {
  ConflictSet c;
  c.add_self_inconsistent(0);
  c.normalize();
  const auto inst = PrioritizedInstance::with_dense_facts(2, c, {}, {{"a", {{0}}}, {"b", {{1}}}});
  EXPECT_EQ(oracle_answers(inst, Semantics::Brave, RepairType::P), (std::vector<std::string>{"b"}));
}

TEST(Oracle, Capacity) {
  ConflictSet c;
  for (FactId f = 0; f + 1 < 30; f += 2) c.add(f, f + 1);
  c.normalize();
  const auto inst = PrioritizedInstance::with_dense_facts(30, c, {}, {});
  OracleLimits limits;
  limits.max_conflicting_facts = 10;
  EXPECT_THROW(enumerate_repairs(inst, limits), CapacityError);
}
