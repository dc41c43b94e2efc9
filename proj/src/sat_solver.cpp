#include "orbits/sat_solver.hpp"

#include <algorithm>
#include <cstdlib>

namespace orbits {

namespace {

constexpr std::uint32_t kUndefLit = UINT32_MAX;

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SatSolver::SatSolver(std::uint64_t seed) : seed_(seed), rng_state_(seed) {}

SatSolver::Lit SatSolver::make_lit(int dimacs) {
  const auto v = static_cast<std::uint32_t>(std::abs(dimacs) - 1);
  return (v << 1) | (dimacs < 0 ? 1U : 0U);
}

void SatSolver::ensure_vars(int n) {
  while (num_vars() < n) new_var();
}

int SatSolver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(kUndef);
  polarity_.push_back(1);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  double act = 0;
  if (seed_ != 0) act = static_cast<double>(splitmix(rng_state_) >> 11) * 0x1.0p-53 * 1e-5;
  activity_.push_back(act);
  heap_pos_.push_back(-1);
  heap_insert(v);
  return static_cast<int>(v) + 1;
}

std::vector<bool> SatSolver::model() const {
  std::vector<bool> out(model_.size() + 1, false);
  for (std::size_t i = 0; i < model_.size(); ++i) out[i + 1] = model_[i] != 0;
  return out;
}

bool SatSolver::add_clause(std::span<const int> lits) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> ls;
  ls.reserve(lits.size());
  for (int x : lits) {
    if (x == 0) continue;
    ensure_vars(std::abs(x));
    ls.push_back(make_lit(x));
  }
  std::sort(ls.begin(), ls.end());
  std::vector<Lit> kept;
  Lit prev = kUndefLit;
  for (Lit l : ls) {
    if (l == prev) continue;
    if (prev != kUndefLit && l == (prev ^ 1U)) return true;  // tautology
    prev = l;
    const std::uint8_t val = value(l);
    if (val == kTrue) return true;
    if (val == kFalse) continue;
    kept.push_back(l);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  clauses_.push_back(ClauseData{std::move(kept), 0, false, false});
  attach(static_cast<CRef>(clauses_.size() - 1));
  return true;
}

void SatSolver::attach(CRef cref) {
  const auto& lits = clauses_[cref].lits;
  watches_[lits[0]].push_back({cref, lits[1]});
  watches_[lits[1]].push_back({cref, lits[0]});
}

void SatSolver::enqueue(Lit l, CRef reason) {
  const std::uint32_t v = var(l);
  assigns_[v] = static_cast<std::uint8_t>(l & 1);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

SatSolver::CRef SatSolver::propagate() {
  CRef conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = p ^ 1U;
    std::vector<Watcher>& ws = watches_[false_lit];
    ++stats_.propagations;
    std::size_t i = 0;
    std::size_t j = 0;
    const std::size_t n = ws.size();
    while (i < n) {
      const Watcher w = ws[i++];
      ClauseData& c = clauses_[w.cref];
      if (c.removed) continue;
      if (value(w.blocker) == kTrue) {
        ws[j++] = w;
        continue;
      }
      auto& lits = c.lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      const Lit first = lits[0];
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != kFalse) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1]].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == kFalse) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < n) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

bool SatSolver::redundant(Lit l) const {
  const CRef r = reason_[var(l)];
  if (r == kNoReason) return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    const std::uint32_t u = var(lits[k]);
    if (!seen_[u] && level_[u] > 0) return false;
  }
  return true;
}

void SatSolver::analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  int path = 0;
  Lit p = kUndefLit;
  learnt.clear();
  learnt.push_back(kUndefLit);
  std::size_t index = trail_.size();
  CRef confl = conflict;
  do {
    ClauseData& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t j = (p == kUndefLit ? 0 : 1); j < c.lits.size(); ++j) {
      const Lit q = c.lits[j];
      const std::uint32_t v = var(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level()) {
          ++path;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[var(trail_[--index])]) {
    }
    p = trail_[index];
    confl = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1U;

  const std::vector<Lit> original(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (!redundant(learnt[i])) learnt[keep++] = learnt[i];
  learnt.resize(keep);
  for (Lit l : original) seen_[var(l)] = 0;

  if (learnt.size() == 1) {
    backtrack_level = 0;
    return;
  }
  std::size_t max_i = 1;
  for (std::size_t i = 2; i < learnt.size(); ++i)
    if (level_[var(learnt[i])] > level_[var(learnt[max_i])]) max_i = i;
  std::swap(learnt[1], learnt[max_i]);
  backtrack_level = level_[var(learnt[1])];
}

void SatSolver::analyze_final(Lit failed) {
  core_.clear();
  core_.push_back(to_dimacs(failed));
  if (decision_level() == 0) return;
  seen_[var(failed)] = 1;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
    const std::uint32_t x = var(trail_[i]);
    if (!seen_[x]) continue;
    if (reason_[x] == kNoReason) {
      core_.push_back(to_dimacs(trail_[i]));
    } else {
      const auto& lits = clauses_[reason_[x]].lits;
      for (std::size_t k = 1; k < lits.size(); ++k)
        if (level_[var(lits[k])] > 0) seen_[var(lits[k])] = 1;
    }
    seen_[x] = 0;
  }
  seen_[var(failed)] = 0;
  std::sort(core_.begin(), core_.end());
  core_.erase(std::unique(core_.begin(), core_.end()), core_.end());
}

void SatSolver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t c = trail_.size(); c-- > stop;) {
    const std::uint32_t x = var(trail_[c]);
    assigns_[x] = kUndef;
    reason_[x] = kNoReason;
    polarity_[x] = (trail_[c] & 1U) ? 0 : 1;
    if (heap_pos_[x] < 0) heap_insert(x);
  }
  qhead_ = stop;
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
}

SatSolver::Lit SatSolver::pick_branch() {
  while (!heap_.empty()) {
    const std::uint32_t v = heap_pop();
    if (assigns_[v] == kUndef) return (v << 1) | (polarity_[v] ? 0U : 1U);
  }
  return kUndefLit;
}

bool SatSolver::locked(CRef cref) const {
  const auto& lits = clauses_[cref].lits;
  return value(lits[0]) == kTrue && reason_[var(lits[0])] == cref;
}

void SatSolver::reduce_learnts() {
  std::sort(learnts_.begin(), learnts_.end(), [&](CRef a, CRef b) {
    const auto& ca = clauses_[a];
    const auto& cb = clauses_[b];
    if ((ca.lits.size() > 2) != (cb.lits.size() > 2)) return ca.lits.size() > 2;
    return ca.activity < cb.activity;
  });
  const std::size_t half = learnts_.size() / 2;
  std::size_t j = 0;
  for (std::size_t i = 0; i < learnts_.size(); ++i) {
    const CRef cref = learnts_[i];
    ClauseData& c = clauses_[cref];
    if (i < half && c.lits.size() > 2 && !locked(cref)) {
      c.removed = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
    } else {
      learnts_[j++] = cref;
    }
  }
  learnts_.resize(j);
}

SatSolver::Result SatSolver::search(std::int64_t conflicts_allowed,
                                    std::span<const Lit> assumptions, std::int64_t& budget_left) {
  std::int64_t conflict_count = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflict_count;
      if (decision_level() == 0) {
        ok_ = false;
        return Result::Unsat;
      }
      if (budget_left == 0) {
        cancel_until(0);
        return Result::Unknown;
      }
      if (budget_left > 0) --budget_left;
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        clauses_.push_back(ClauseData{learnt, 0, true, false});
        const auto cref = static_cast<CRef>(clauses_.size() - 1);
        learnts_.push_back(cref);
        attach(cref);
        bump_clause(clauses_[cref]);
        enqueue(learnt[0], cref);
      }
      var_inc_ /= 0.95;
      cla_inc_ /= 0.999;
      continue;
    }
    if (conflict_count >= conflicts_allowed) {
      cancel_until(0);
      return Result::Unknown;
    }
    if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >=
        max_learnts_) {
      reduce_learnts();
      max_learnts_ *= 1.1;
    }
    Lit next = kUndefLit;
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      const Lit p = assumptions[static_cast<std::size_t>(decision_level())];
      const std::uint8_t val = value(p);
      if (val == kTrue) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (val == kFalse) {
        analyze_final(p);
        return Result::Unsat;
      } else {
        next = p;
        break;
      }
    }
    if (next == kUndefLit) {
      next = pick_branch();
      if (next == kUndefLit) return Result::Sat;
      ++stats_.decisions;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

SatSolver::Result SatSolver::solve(std::span<const int> assumptions, std::int64_t conflict_budget) {
  ++stats_.solves;
  model_.clear();
  core_.clear();
  if (!ok_) return Result::Unsat;
  std::vector<Lit> assumps;
  assumps.reserve(assumptions.size());
  for (int a : assumptions) {
    ensure_vars(std::abs(a));
    assumps.push_back(make_lit(a));
  }
  if (max_learnts_ == 0) max_learnts_ = std::max(2000.0, static_cast<double>(clauses_.size()) / 3);
  std::int64_t budget_left = conflict_budget < 0 ? -1 : conflict_budget;
  Result status = Result::Unknown;
  for (int restart = 0;; ++restart) {
    const auto allowed = static_cast<std::int64_t>(luby(2, restart) * 100);
    status = search(allowed, assumps, budget_left);
    if (status != Result::Unknown) break;
    if (budget_left == 0) break;
    ++stats_.restarts;
  }
  if (status == Result::Sat) {
    model_.resize(assigns_.size());
    for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue ? 1 : 0;
  }
  // A failed assumption leaves a core of assumption literals; an empty core
  // with ok_ false means the clauses alone are unsatisfiable.
  cancel_until(0);
  return status;
}

bool SatSolver::heap_less(std::uint32_t a, std::uint32_t b) const {
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void SatSolver::heap_insert(std::uint32_t v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void SatSolver::heap_up(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void SatSolver::heap_down(std::size_t i) {
  const std::uint32_t v = heap_[i];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

std::uint32_t SatSolver::heap_pop() {
  const std::uint32_t top = heap_.front();
  heap_pos_[top] = -1;
  const std::uint32_t last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

void SatSolver::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void SatSolver::bump_clause(ClauseData& c) {
  c.activity += cla_inc_;
  if (c.activity > 1e20) {
    for (CRef r : learnts_) clauses_[r].activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

}  // namespace orbits
