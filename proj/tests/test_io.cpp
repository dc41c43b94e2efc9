#include <gtest/gtest.h>

#include "orbits/generate.hpp"
#include "orbits/instance_io.hpp"
#include "orbits/oracle.hpp"

using namespace orbits;

namespace {

const std::string kFixtures = ORBITS_FIXTURE_DIR;

}  // namespace

TEST(InstanceIo, LoadsExampleFixture) {
  const LoadedInstance l =
      load_instance(kFixtures + "/four_facts_kb.json", kFixtures + "/four_facts_answers.json");
  EXPECT_EQ(l.instance.num_facts(), 4u);
  EXPECT_EQ(l.instance.conflicts().pairs.size(), 4u);
  EXPECT_EQ(l.instance.priority().edges.size(), 2u);
  ASSERT_EQ(l.instance.answers().size(), 1u);
  EXPECT_EQ(l.instance.answers()[0].causes.size(), 2u);
  EXPECT_EQ(l.instance.facts()[0].label, "R(a,b)");
}

TEST(InstanceIo, RoundTrip) {
  const LoadedInstance a =
      load_instance(kFixtures + "/four_facts_kb.json", kFixtures + "/four_facts_answers.json");
  const LoadedInstance b =
      parse_instance(kb_to_json(a.instance), answers_to_json(a.instance, a.query));
  EXPECT_EQ(kb_to_json(a.instance), kb_to_json(b.instance));
  EXPECT_EQ(answers_to_json(a.instance, a.query), answers_to_json(b.instance, b.query));
  EXPECT_EQ(b.query, a.query);
}

TEST(InstanceIo, ImplicitUniverse) {
  const LoadedInstance l = parse_instance(R"({"conflicts": [[7, 3]], "priority": [[7, 3]]})",
                                          R"({"answers": [{"id": "x", "causes": [[9]]}]})");
  EXPECT_EQ(l.instance.num_facts(), 3u);
  EXPECT_EQ(l.instance.facts()[0].external_id, 3);
  EXPECT_TRUE(l.instance.prefers(1, 0));
}

TEST(InstanceIo, EmptyConflictsAllTrivial) {
  const LoadedInstance l = parse_instance(R"({"facts": [{"id": 1}], "conflicts": []})",
                                          R"({"answers": [{"id": "x", "causes": [[1]]}]})");
  EXPECT_TRUE(l.instance.conflicts().empty());
  EXPECT_EQ(oracle_answers(l.instance, Semantics::IAR, RepairType::P),
            (std::vector<std::string>{"x"}));
}

TEST(InstanceIo, Errors) {
  const std::string ok_ans = R"({"answers": []})";
  EXPECT_THROW(parse_instance(R"({"facts": [{"id": 1}, {"id": 2}], "conflicts": [], "priority": [[1, 2]]})", ok_ans),
               InstanceError);
  EXPECT_THROW(parse_instance(R"({"facts": [{"id": 1}], "conflicts": [[1, 5]]})", ok_ans),
               InstanceError);
  EXPECT_THROW(parse_instance(R"({"facts": [{"id": 1}, {"id": 1}]})", ok_ans), InstanceError);
  EXPECT_THROW(parse_instance(R"({"facts": [{"id": 1}]})", R"({"answers": [{"id": "a", "causes": []}]})"),
               InstanceError);
  try {
    parse_instance("{\n  \"facts\": [,]\n}", ok_ans);
    FAIL() << "expected a parse error";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_instance("/nonexistent/kb.json", "/nonexistent/a.json"), IoError);
}

TEST(InstanceIo, CycleWitnessUsesFileIds) {
  try {
    parse_instance(R"({"conflicts": [[10, 20], [20, 30], [30, 10]],
                       "priority": [[10, 20], [20, 30], [30, 10]]})",
                   R"({"answers": []})");
    FAIL() << "expected a validation error";
  } catch (const InstanceError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("10"), std::string::npos);
    EXPECT_NE(msg.find("30"), std::string::npos);
  }
}

TEST(Generate, Deterministic) {
  InstanceParams p;
  p.facts = 10;
  p.conflicts = 12;
  p.seed = 42;
  EXPECT_EQ(kb_to_json(random_instance(p)), kb_to_json(random_instance(p)));
  EXPECT_EQ(answers_to_json(random_instance(p), "q"), answers_to_json(random_instance(p), "q"));
  p.seed = 43;
  const auto other = random_instance(p);
  EXPECT_EQ(other.conflicts().pairs.size(), 12u);
}

TEST(Generate, Shapes) {
  InstanceParams p;
  p.facts = 4;
  p.conflicts = 0;
  const auto free = random_instance(p);
  EXPECT_TRUE(free.conflicts().empty());
  EXPECT_EQ(oracle_answers(free, Semantics::IAR, RepairType::S).size(), free.answers().size());

  p.facts = 6;
  p.conflicts = 15;
  const auto complete = random_instance(p);
  for (const FactSet& r : enumerate_repairs(complete).repairs) EXPECT_EQ(r.size(), 1u);

  p.conflicts = 16;
  EXPECT_THROW(random_instance(p), std::invalid_argument);
}

TEST(Generate, Priorities) {
  InstanceParams p;
  p.facts = 8;
  p.conflicts = 12;
  const auto inst = random_instance(p);
  EXPECT_TRUE(generate_priority(inst, {PriorityParams::Mode::Score, 1, 0, 3}).empty());
  EXPECT_TRUE(generate_priority(inst, {PriorityParams::Mode::Random, 0, 0.0, 3}).empty());
  const auto scored = generate_priority(inst, {PriorityParams::Mode::Score, 5, 0, 3});
  EXPECT_TRUE(is_score_structured(inst.conflicts(), scored));
  const auto random = generate_priority(inst, {PriorityParams::Mode::Random, 0, 0.8, 3});
  EXPECT_TRUE(validate_priority(inst.conflicts(), random).ok());
  EXPECT_THROW(generate_priority(inst, {PriorityParams::Mode::Score, 0, 0, 3}), std::invalid_argument);
  EXPECT_THROW(generate_priority(inst, {PriorityParams::Mode::Random, 0, 1.5, 3}), std::invalid_argument);
}
