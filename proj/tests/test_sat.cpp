#include <gtest/gtest.h>

#include "orbits/random.hpp"
#include "orbits/sat_engine.hpp"
#include "orbits/sat_solver.hpp"
#include "test_support.hpp"

using namespace orbits;
using namespace orbits::testing;

TEST(SatSolver, Basics) {
  SatSolver s;
  s.ensure_vars(1);
  std::vector<int> a{1}, b{-1};
  s.add_clause(a);
  EXPECT_FALSE(s.add_clause(b));
  EXPECT_EQ(s.solve(), SatSolver::Result::Unsat);

  SatSolver empty;
  EXPECT_EQ(empty.solve(), SatSolver::Result::Sat);
}

TEST(SatSolver, AssumptionsAndCore) {
  SatSolver s;
  s.ensure_vars(3);
  std::vector<int> c1{-1, 2}, c2{-2, 3};
  s.add_clause(c1);
  s.add_clause(c2);
  std::vector<int> assume{1, -3};
  ASSERT_EQ(s.solve(assume), SatSolver::Result::Unsat);
  for (int l : s.core()) EXPECT_TRUE(l == 1 || l == -3);
  EXPECT_FALSE(s.core().empty());
  std::vector<int> ok{1};
  ASSERT_EQ(s.solve(ok), SatSolver::Result::Sat);
  EXPECT_TRUE(s.model_value(3));

  std::vector<int> both{2, -2};
  ASSERT_EQ(s.solve(both), SatSolver::Result::Unsat);
  for (int l : s.core()) EXPECT_TRUE(l == 2 || l == -2);
}

// Pigeonhole 7 into 6 needs many conflicts.
TEST(SatSolver, BudgetGivesUnknown) {
  const int pigeons = 7, holes = 6;
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  SatSolver s;
  s.ensure_vars(pigeons * holes);
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> c;
    for (int h = 0; h < holes; ++h) c.push_back(var(p, h));
    s.add_clause(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) {
        std::vector<int> c{-var(p, h), -var(q, h)};
        s.add_clause(c);
      }
  EXPECT_EQ(s.solve({}, 10), SatSolver::Result::Unknown);
  EXPECT_EQ(s.solve(), SatSolver::Result::Unsat);
}

TEST(SatEngine, BudgetRaises) {
  CnfFormula f;
  const int n = 8, holes = 7;
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  f = raw_formula(n * holes, {});
  for (int p = 0; p < n; ++p) {
    Clause c;
    for (int h = 0; h < holes; ++h) c.push_back(var(p, h));
    f.hard.push_back(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) f.hard.push_back({-var(p, h), -var(q, h)});
  EXPECT_THROW(solve(f, {5, 0}), BudgetExhausted);
}

TEST(SatEngine, SolveSimple) {
  EXPECT_FALSE(solve(raw_formula(1, {{1}, {-1}})).sat());
  EXPECT_TRUE(solve(CnfFormula{}).sat());
}

TEST(SatEngine, MaximizeSoft) {
  CnfFormula f = raw_formula(3, {{-1, -2}});
  EXPECT_EQ(maximize_soft(f, {1, 2}).optimum, 1u);
  EXPECT_EQ(maximize_soft(raw_formula(3, {}), {1, 2, 3}).optimum, 3u);
  const std::vector<int> fixed{-1};
  const SolveResult r = maximize_soft(raw_formula(3, {{-1, -2}}), {1, 2, 3}, fixed);
  EXPECT_EQ(r.optimum, 2u);
  EXPECT_FALSE(r.value(1));
}

TEST(SatEngine, EnumerateMus) {
  MusEnumeration m = enumerate_mus(raw_formula(2, {{-1}}), {1, 2});
  EXPECT_EQ(m.muses, (std::vector<std::vector<int>>{{1}}));
  m = enumerate_mus(raw_formula(2, {{-1, -2}, {2}}), {1});
  EXPECT_EQ(m.muses, (std::vector<std::vector<int>>{{1}}));
  m = enumerate_mus(raw_formula(3, {{-1, -2}, {-3}}), {1, 2, 3});
  EXPECT_EQ(m.muses, (std::vector<std::vector<int>>{{1, 2}, {3}}));
  m = enumerate_mus(raw_formula(1, {{1}, {-1}}), {1});
  EXPECT_TRUE(m.hard_unsat);
}

TEST(SatEngine, SessionIsIncremental) {
  SolverSession s(raw_formula(2, {{1, 2}}));
  EXPECT_TRUE(s.solve().sat());
  s.add_clause({-1});
  const SolveResult r = s.solve();
  ASSERT_TRUE(r.sat());
  EXPECT_TRUE(r.value(2));
  s.add_clause({-2});
  EXPECT_FALSE(s.solve().sat());
}

namespace {

bool brute_sat(int n, const std::vector<Clause>& clauses) {
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<bool> model(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) model[static_cast<std::size_t>(v)] = (m >> (v - 1)) & 1u;
    if (std::all_of(clauses.begin(), clauses.end(),
                    [&](const Clause& c) { return clause_satisfied(c, model); }))
      return true;
  }
  return false;
}

}  // namespace

TEST(SatEngine, RandomAgainstTruthTable) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(rng.between(1, 10));
    const int m = static_cast<int>(rng.between(0, 40));
    std::vector<Clause> clauses;
    for (int i = 0; i < m; ++i) {
      Clause c;
      const int k = static_cast<int>(rng.between(1, 3));
      for (int j = 0; j < k; ++j) {
        const int v = static_cast<int>(rng.between(1, n));
        c.push_back(rng.chance(0.5) ? v : -v);
      }
      clauses.push_back(c);
    }
    const CnfFormula f = raw_formula(n, clauses);
    for (std::uint64_t seed : {0u, 7u}) {
      const SolveResult r = solve(f, {-1, seed});
      EXPECT_EQ(r.sat(), brute_sat(n, clauses)) << "trial " << t;
      if (r.sat()) EXPECT_TRUE(f.satisfied_by(r.model));
    }
  }
}
