#include "orbits/sat_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

namespace orbits {

SolverSession::SolverSession(const CnfFormula& formula, EngineOptions options)
    : SolverSession(formula.num_vars(), formula.hard, options) {}

SolverSession::SolverSession(int num_vars, const std::vector<Clause>& hard, EngineOptions options)
    : solver_(options.seed), declared_vars_(num_vars), options_(options) {
  solver_.ensure_vars(num_vars);
  hard_.reserve(hard.size());
  for (const Clause& c : hard) add_clause(c);
}

void SolverSession::add_clause(const Clause& clause) {
  for (int l : clause) declared_vars_ = std::max(declared_vars_, std::abs(l));
  hard_.push_back(clause);
  solver_.add_clause(clause);
}

int SolverSession::new_var() {
  const int v = solver_.new_var();
  declared_vars_ = std::max(declared_vars_, v);
  return v;
}

SolveResult SolverSession::solve_assuming(std::span<const int> assumptions) {
  const auto status = solver_.solve(assumptions, options_.conflict_budget);
  SolveResult out;
  if (status == SatSolver::Result::Unknown) {
    throw BudgetExhausted("conflict budget of " + std::to_string(options_.conflict_budget) +
                          " exhausted");
  }
  if (status == SatSolver::Result::Unsat) {
    out.status = SolveResult::Status::Unsat;
    if (solver_.okay()) out.core = solver_.core();
    return out;
  }
  out.status = SolveResult::Status::Sat;
  out.model = solver_.model();
  out.model.resize(static_cast<std::size_t>(std::max(declared_vars_, solver_.num_vars())) + 1,
                   false);
  for (const Clause& c : hard_) {
    if (!clause_satisfied(c, out.model)) throw std::logic_error("solver returned a non-model");
  }
  for (int a : assumptions) {
    if (!out.value(a)) throw std::logic_error("solver model violates an assumption");
  }
  return out;
}

std::vector<int> SolverSession::build_totalizer(std::span<const int> inputs) {
  if (inputs.size() == 1) return {inputs[0]};
  const std::size_t half = inputs.size() / 2;
  const std::vector<int> a = build_totalizer(inputs.first(half));
  const std::vector<int> b = build_totalizer(inputs.subspan(half));
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  std::vector<int> out(p + q);
  for (int& o : out) o = new_var();
  // Only the direction "output true implies enough inputs true" is needed.
  for (std::size_t i = 0; i <= p; ++i) {
    for (std::size_t j = 0; j <= q; ++j) {
      const std::size_t s = i + j + 1;
      if (s > p + q) continue;
      Clause c{-out[s - 1]};
      if (i < p) c.push_back(a[i]);
      if (j < q) c.push_back(b[j]);
      add_clause(c);
    }
  }
  return out;
}

SolveResult SolverSession::maximize_soft(const std::vector<int>& soft, std::span<const int> fixed) {
  SolveResult best = solve_assuming(fixed);
  if (!best.sat()) return best;
  auto count = [&](const SolveResult& r) {
    return static_cast<std::size_t>(
        std::count_if(soft.begin(), soft.end(), [&](int l) { return r.value(l); }));
  };
  best.optimum = count(best);
  if (best.optimum == soft.size()) return best;

  auto it = totalizers_.find(soft);
  if (it == totalizers_.end()) it = totalizers_.emplace(soft, build_totalizer(soft)).first;
  const std::vector<int>& outputs = it->second;

  std::vector<int> assumptions(fixed.begin(), fixed.end());
  assumptions.push_back(0);
  while (best.optimum < soft.size()) {
    assumptions.back() = outputs[best.optimum];
    SolveResult next = solve_assuming(assumptions);
    if (!next.sat()) break;
    next.optimum = count(next);
    best = std::move(next);
  }
  best.core.clear();
  return best;
}

SolveResult solve(const CnfFormula& formula, EngineOptions options) {
  SolverSession session(formula, options);
  return session.solve();
}

SolveResult solve_assuming(const CnfFormula& formula, std::span<const int> assumptions,
                           EngineOptions options) {
  SolverSession session(formula, options);
  return session.solve_assuming(assumptions);
}

SolveResult maximize_soft(const CnfFormula& formula, const std::vector<int>& soft,
                          std::span<const int> fixed, EngineOptions options) {
  SolverSession session(formula, options);
  return session.maximize_soft(soft, fixed);
}

MusEnumeration enumerate_mus(const CnfFormula& formula, const std::vector<int>& soft,
                             EngineOptions options) {
  MusEnumeration out;
  SolverSession session(formula, options);
  if (!session.solve().sat()) {
    out.hard_unsat = true;
    out.muses.push_back({});
    return out;
  }
  std::vector<int> units;
  for (int l : soft)
    if (std::find(units.begin(), units.end(), l) == units.end()) units.push_back(l);
  std::unordered_map<int, std::size_t> index;
  for (std::size_t i = 0; i < units.size(); ++i) index[units[i]] = i;
  const std::size_t n = units.size();

  // Map solver: variable i+1 selects unit i. Models are unexplored subsets.
  SatSolver map(options.seed);
  map.ensure_vars(static_cast<int>(n));
  auto literals_of = [&](const std::vector<std::size_t>& ids) {
    std::vector<int> lits;
    for (std::size_t i : ids) lits.push_back(units[i]);
    return lits;
  };
  auto core_ids = [&](const SolveResult& r) {
    std::vector<std::size_t> ids;
    for (int l : r.core) {
      auto it = index.find(l);
      if (it != index.end()) ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  };

  for (;;) {
    const auto status = map.solve();
    if (status != SatSolver::Result::Sat) break;
    std::vector<std::size_t> seed;
    for (std::size_t i = 0; i < n; ++i)
      if (map.model_value(static_cast<int>(i) + 1)) seed.push_back(i);

    SolveResult r = session.solve_assuming(literals_of(seed));
    if (r.sat()) {
      std::vector<char> in(n, 0);
      for (std::size_t i = 0; i < n; ++i) in[i] = r.value(units[i]) ? 1 : 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (in[i]) continue;
        std::vector<int> trial;
        for (std::size_t k = 0; k < n; ++k)
          if (in[k] || k == i) trial.push_back(units[k]);
        SolveResult g = session.solve_assuming(trial);
        if (g.sat())
          for (std::size_t k = 0; k < n; ++k)
            if (g.value(units[k])) in[k] = 1;
      }
      std::vector<int> block;
      for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) block.push_back(static_cast<int>(i) + 1);
      if (!map.add_clause(block)) break;
    } else {
      std::vector<std::size_t> mus = core_ids(r);
      for (std::size_t pos = 0; pos < mus.size();) {
        std::vector<std::size_t> trial;
        for (std::size_t k = 0; k < mus.size(); ++k)
          if (k != pos) trial.push_back(mus[k]);
        SolveResult t = session.solve_assuming(literals_of(trial));
        if (t.sat()) {
          ++pos;
        } else {
          // The core may drop more than the tested element; keep only its
          // members, preserving already confirmed positions.
          const std::vector<std::size_t> core = core_ids(t);
          std::vector<std::size_t> shrunk;
          std::size_t kept_before = 0;
          for (std::size_t k = 0; k < trial.size(); ++k) {
            if (std::binary_search(core.begin(), core.end(), trial[k])) {
              shrunk.push_back(trial[k]);
              if (k < pos) ++kept_before;
            }
          }
          mus = std::move(shrunk);
          pos = kept_before;
        }
      }
      std::vector<int> block;
      for (std::size_t i : mus) block.push_back(-(static_cast<int>(i) + 1));
      out.muses.push_back(literals_of(mus));
      if (!map.add_clause(block)) break;
    }
  }
  std::sort(out.muses.begin(), out.muses.end());
  return out;
}

}  // namespace orbits
