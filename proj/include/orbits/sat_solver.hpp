#pragma once

// Conflict-driven clause-learning SAT solver with two watched literals,
// first-UIP learning, VSIDS branching, Luby restarts and incremental
// solving under assumptions. Literals at the API are DIMACS integers.

#include <cstdint>
#include <span>
#include <vector>

namespace orbits {

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

class SatSolver {
 public:
  enum class Result { Sat, Unsat, Unknown };

  /// A nonzero seed perturbs the initial branching order.
  explicit SatSolver(std::uint64_t seed = 0);

  /// Makes variables 1..n available.
  void ensure_vars(int n);
  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const int> lits);
  bool okay() const { return ok_; }

  /// conflict_budget < 0 means unlimited; exceeding it yields Unknown.
  Result solve(std::span<const int> assumptions = {}, std::int64_t conflict_budget = -1);

  /// Value of variable v in the last model.
  bool model_value(int v) const { return model_[static_cast<std::size_t>(v - 1)] != 0; }
  /// Model indexed by variable, entry 0 unused.
  std::vector<bool> model() const;
  /// After Unsat under assumptions: a subset of the assumptions that is
  /// already inconsistent with the clauses.
  const std::vector<int>& core() const { return core_; }

  const SolverStats& stats() const { return stats_; }

 private:
  using Lit = std::uint32_t;
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = UINT32_MAX;
  static constexpr std::uint8_t kTrue = 0;
  static constexpr std::uint8_t kFalse = 1;
  static constexpr std::uint8_t kUndef = 2;

  struct ClauseData {
    std::vector<Lit> lits;
    double activity = 0;
    bool learnt = false;
    bool removed = false;
  };
  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  static Lit make_lit(int dimacs);
  static int to_dimacs(Lit l) { return (l & 1) ? -static_cast<int>((l >> 1) + 1) : static_cast<int>((l >> 1) + 1); }
  static std::uint32_t var(Lit l) { return l >> 1; }

  std::uint8_t value(Lit l) const {
    const std::uint8_t v = assigns_[var(l)];
    return v == kUndef ? kUndef : static_cast<std::uint8_t>(v ^ (l & 1));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(CRef cref);
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level);
  bool redundant(Lit l) const;
  void analyze_final(Lit p);
  void cancel_until(int level);
  Lit pick_branch();
  Result search(std::int64_t conflicts_allowed, std::span<const Lit> assumptions,
                std::int64_t& budget_left);
  void reduce_learnts();
  bool locked(CRef cref) const;

  void bump_var(std::uint32_t v);
  void bump_clause(ClauseData& c);
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();
  bool heap_less(std::uint32_t a, std::uint32_t b) const;

  bool ok_ = true;
  std::vector<ClauseData> clauses_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::uint8_t> assigns_;
  std::vector<std::uint8_t> polarity_;  // saved phase: 1 means positive
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;  // -1 when absent

  std::vector<std::uint8_t> seen_;
  std::vector<std::uint8_t> model_;
  std::vector<int> core_;
  double max_learnts_ = 0;
  std::uint64_t seed_;
  std::uint64_t rng_state_;
  SolverStats stats_;
};

}  // namespace orbits
