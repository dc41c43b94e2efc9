#pragma once

// Propositional formulas over interned, tagged variables. Literals use the
// DIMACS convention: variable indices start at 1 and negation is the sign.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbits/kb_model.hpp"

namespace orbits {

enum class VarTag : std::uint8_t {
  Fact,        // x_α
  NsFact,      // x_α inside a per-cause namespace
  CauseSel,    // x_C, selector for cause index b of answer a
  Answer,      // x_a
  AssumeFact,  // y_α
  PrefEdge,    // x_{β→α}
  CompOrder,   // x_{α≻′β}
  Trans,       // t_{α,β}
};

const char* tag_name(VarTag tag);

/// Namespace 0 is shared; positive namespaces keep the variables of distinct
/// conjuncts apart. Field meaning depends on the tag: facts use `a`, pairs
/// use (a, b), CauseSel uses (answer, cause index), Answer uses the answer index.
struct VarKey {
  VarTag tag = VarTag::Fact;
  std::uint32_t ns = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  static VarKey fact(FactId f, std::uint32_t ns = 0) {
    return {ns == 0 ? VarTag::Fact : VarTag::NsFact, ns, f, 0};
  }
  static VarKey cause_sel(std::uint32_t answer, std::uint32_t cause) {
    return {VarTag::CauseSel, 0, answer, cause};
  }
  static VarKey answer(std::uint32_t answer) { return {VarTag::Answer, 0, answer, 0}; }
  static VarKey assume_fact(FactId f) { return {VarTag::AssumeFact, 0, f, 0}; }
  static VarKey pref_edge(FactId from, FactId to, std::uint32_t ns = 0) {
    return {VarTag::PrefEdge, ns, from, to};
  }
  static VarKey comp_order(FactId winner, FactId loser, std::uint32_t ns = 0) {
    return {VarTag::CompOrder, ns, winner, loser};
  }
  static VarKey trans(FactId from, FactId to, std::uint32_t ns = 0) {
    return {VarTag::Trans, ns, from, to};
  }

  bool is_fact() const { return tag == VarTag::Fact || tag == VarTag::NsFact; }
  std::string to_string() const;
  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

/// Signed occurrence of a key, before interning.
struct KeyLit {
  VarKey key;
  bool positive = true;
  friend auto operator<=>(const KeyLit&, const KeyLit&) = default;
};

inline KeyLit pos(VarKey k) { return {k, true}; }
inline KeyLit neg(VarKey k) { return {k, false}; }

using KeyClause = std::vector<KeyLit>;
using Clause = std::vector<int>;

/// Facts whose x-variable (in namespace ns) occurs in the clauses.
FactSet facts_of(const std::vector<KeyClause>& clauses, std::uint32_t ns = 0);

class VarRegistry {
 public:
  /// Returns the variable for key, creating it on first use.
  int intern(const VarKey& key);
  std::optional<int> find(const VarKey& key) const;
  const VarKey& key(int var) const { return keys_.at(static_cast<std::size_t>(var - 1)); }
  int num_vars() const { return static_cast<int>(keys_.size()); }

 private:
  std::map<VarKey, int> index_;
  std::vector<VarKey> keys_;
};

struct CnfFormula {
  VarRegistry registry;
  std::vector<Clause> hard;
  /// Unit soft clauses of weight 1, given as literals.
  std::vector<int> soft_units;
  /// The first and second fact scopes (F₁/F₂, G₁/G₂, H₁/H₂), unioned over namespaces.
  FactSet scope_first;
  FactSet scope_second;

  int num_vars() const { return registry.num_vars(); }
  int lit(const KeyLit& l) { return l.positive ? registry.intern(l.key) : -registry.intern(l.key); }
  /// Interns the clause and drops duplicate literals.
  void add(const KeyClause& clause);
  void add(const std::vector<KeyClause>& clauses);
  void add_soft(const VarKey& key) { soft_units.push_back(registry.intern(key)); }
  bool satisfied_by(const std::vector<bool>& model) const;
};

/// True iff some literal is made true by model (indexed by variable).
bool clause_satisfied(const Clause& clause, const std::vector<bool>& model);

// DIMACS CNF / WCNF.
class DimacsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain CNF over the hard clauses, or WCNF with top = |soft|+1 when weighted.
void write_dimacs(std::ostream& out, const CnfFormula& formula, bool weighted);
std::string to_dimacs(const CnfFormula& formula, bool weighted);

struct DimacsProblem {
  int num_vars = 0;
  std::vector<Clause> hard;
  std::vector<int> soft_units;
};

/// Accepts "p cnf" and "p wcnf" inputs; WCNF soft clauses must be units.
DimacsProblem parse_dimacs(std::istream& in);

}  // namespace orbits
