#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "orbits/cnf.hpp"
#include "orbits/sat_solver.hpp"

namespace orbits {

/// Raised when a solver call exceeds its conflict budget. Distinct from UNSAT.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  /// Per solver call; negative means unlimited.
  std::int64_t conflict_budget = -1;
  std::uint64_t seed = 0;
};

struct SolveResult {
  enum class Status { Sat, Unsat };
  Status status = Status::Unsat;
  /// Indexed by variable; entry 0 unused. Empty when UNSAT.
  std::vector<bool> model;
  /// Assumption literals responsible for UNSAT (empty when the hard clauses alone are UNSAT).
  std::vector<int> core;
  /// Number of satisfied soft units for maximize_soft.
  std::size_t optimum = 0;

  bool sat() const { return status == Status::Sat; }
  bool value(int lit) const {
    const auto v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
    return v < model.size() && model[v] == (lit > 0);
  }
};

/// One incremental solver over a growing set of hard clauses. Not thread-safe.
class SolverSession {
 public:
  explicit SolverSession(const CnfFormula& formula, EngineOptions options = {});
  SolverSession(int num_vars, const std::vector<Clause>& hard, EngineOptions options = {});

  void add_clause(const Clause& clause);
  int new_var();
  int num_vars() const { return solver_.num_vars(); }

  SolveResult solve_assuming(std::span<const int> assumptions);
  SolveResult solve() { return solve_assuming({}); }

  /// Model of hard ∧ fixed maximizing the number of true soft literals.
  SolveResult maximize_soft(const std::vector<int>& soft, std::span<const int> fixed);

  const SolverStats& stats() const { return solver_.stats(); }

 private:
  // Totalizer outputs: outputs[i] true forces at least i+1 inputs true.
  std::vector<int> build_totalizer(std::span<const int> inputs);

  SatSolver solver_;
  std::vector<Clause> hard_;
  int declared_vars_ = 0;
  EngineOptions options_;
  std::map<std::vector<int>, std::vector<int>> totalizers_;
};

SolveResult solve(const CnfFormula& formula, EngineOptions options = {});
SolveResult solve_assuming(const CnfFormula& formula, std::span<const int> assumptions,
                           EngineOptions options = {});
SolveResult maximize_soft(const CnfFormula& formula, const std::vector<int>& soft,
                          std::span<const int> fixed = {}, EngineOptions options = {});

struct MusEnumeration {
  /// Each MUS lists soft literals. A single empty MUS means the hard clauses are UNSAT.
  std::vector<std::vector<int>> muses;
  bool hard_unsat = false;
};

/// All minimal subsets of soft that are UNSAT together with the hard clauses.
MusEnumeration enumerate_mus(const CnfFormula& formula, const std::vector<int>& soft,
                             EngineOptions options = {});

}  // namespace orbits
