#include <gtest/gtest.h>

#include <sstream>

#include "orbits/cnf.hpp"
#include "test_support.hpp"

using namespace orbits;
using namespace orbits::testing;

TEST(Cnf, RegistryInternsOnce) {
  VarRegistry r;
  const int a = r.intern(VarKey::fact(3));
  const int b = r.intern(VarKey::fact(3, 2));
  EXPECT_NE(a, b);
  EXPECT_EQ(r.intern(VarKey::fact(3)), a);
  EXPECT_EQ(r.key(b).tag, VarTag::NsFact);
  EXPECT_EQ(r.find(VarKey::answer(0)), std::nullopt);
  EXPECT_EQ(r.num_vars(), 2);
}

TEST(Cnf, AddDropsDuplicateLiterals) {
  CnfFormula f;
  f.add(KeyClause{x(1), x(1), nx(2)});
  ASSERT_EQ(f.hard.size(), 1u);
  EXPECT_EQ(f.hard[0].size(), 2u);
}

TEST(Cnf, FactsOf) {
  const std::vector<KeyClause> clauses = {{x(2), pos(VarKey::answer(0))}, {nx(1), pos(VarKey::fact(5, 1))}};
  EXPECT_EQ(facts_of(clauses), (FactSet{1, 2}));
  EXPECT_EQ(facts_of(clauses, 1), (FactSet{5}));
}

TEST(Cnf, SatisfiedBy) {
  CnfFormula f = raw_formula(2, {{1, 2}, {-1}});
  EXPECT_TRUE(f.satisfied_by({false, false, true}));
  EXPECT_FALSE(f.satisfied_by({false, true, true}));
}

TEST(Dimacs, RoundTripWeighted) {
  CnfFormula f = raw_formula(3, {{1, -2}, {2, 3}});
  f.soft_units = {1, -3};
  const std::string text = to_dimacs(f, true);
  EXPECT_NE(text.find("p wcnf 3 4 3"), std::string::npos);
  std::istringstream in(text);
  const DimacsProblem p = parse_dimacs(in);
  EXPECT_EQ(p.num_vars, 3);
  EXPECT_EQ(p.hard, f.hard);
  EXPECT_EQ(p.soft_units, f.soft_units);
}

TEST(Dimacs, RoundTripPlain) {
  CnfFormula f = raw_formula(2, {{1, -2}, {}});
  std::istringstream in(to_dimacs(f, false));
  const DimacsProblem p = parse_dimacs(in);
  EXPECT_EQ(p.hard, f.hard);
}

TEST(Dimacs, ParseErrors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_dimacs(in);
  };
  EXPECT_THROW(parse("1 2 0\n"), DimacsError);
  EXPECT_THROW(parse("p cnf 2 1\n1 3 0\n"), DimacsError);
  EXPECT_THROW(parse("p cnf 2 2\n1 2 0\n"), DimacsError);
  EXPECT_THROW(parse("p cnf 2 1\n1 2\n"), DimacsError);
  EXPECT_THROW(parse("p wcnf 2 1 5\n1 1 2 0\n"), DimacsError);
  EXPECT_NO_THROW(parse("c comment\np cnf 2 1\n1 -2 0\n"));
}
