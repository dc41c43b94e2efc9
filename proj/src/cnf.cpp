#include "orbits/cnf.hpp"

#include <algorithm>
#include <cstdlib>

namespace orbits {

const char* tag_name(VarTag tag) {
  switch (tag) {
    case VarTag::Fact: return "fact";
    case VarTag::NsFact: return "nsfact";
    case VarTag::CauseSel: return "cause";
    case VarTag::Answer: return "answer";
    case VarTag::AssumeFact: return "assume";
    case VarTag::PrefEdge: return "pref";
    case VarTag::CompOrder: return "order";
    case VarTag::Trans: return "trans";
  }
  return "?";
}

std::string VarKey::to_string() const {
  std::string out = tag_name(tag);
  switch (tag) {
    case VarTag::Fact:
    case VarTag::AssumeFact:
    case VarTag::Answer:
      out += "(" + std::to_string(a) + ")";
      break;
    case VarTag::NsFact:
      out += "(" + std::to_string(a) + ")";
      break;
    case VarTag::CauseSel:
    case VarTag::PrefEdge:
    case VarTag::CompOrder:
    case VarTag::Trans:
      out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      break;
  }
  if (ns != 0) out += "@" + std::to_string(ns);
  return out;
}

FactSet facts_of(const std::vector<KeyClause>& clauses, std::uint32_t ns) {
  FactSet out;
  for (const KeyClause& clause : clauses)
    for (const KeyLit& l : clause)
      if (l.key.is_fact() && l.key.ns == ns) out.push_back(l.key.a);
  return make_fact_set(std::move(out));
}

int VarRegistry::intern(const VarKey& key) {
  auto [it, inserted] = index_.try_emplace(key, static_cast<int>(keys_.size()) + 1);
  if (inserted) keys_.push_back(key);
  return it->second;
}

std::optional<int> VarRegistry::find(const VarKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void CnfFormula::add(const KeyClause& clause) {
  Clause c;
  c.reserve(clause.size());
  for (const KeyLit& l : clause) {
    const int x = lit(l);
    if (std::find(c.begin(), c.end(), x) == c.end()) c.push_back(x);
  }
  hard.push_back(std::move(c));
}

void CnfFormula::add(const std::vector<KeyClause>& clauses) {
  for (const KeyClause& c : clauses) add(c);
}

bool clause_satisfied(const Clause& clause, const std::vector<bool>& model) {
  for (int l : clause) {
    const auto v = static_cast<std::size_t>(std::abs(l));
    if (v < model.size() && model[v] == (l > 0)) return true;
  }
  return false;
}

bool CnfFormula::satisfied_by(const std::vector<bool>& model) const {
  return std::all_of(hard.begin(), hard.end(),
                     [&](const Clause& c) { return clause_satisfied(c, model); });
}

}  // namespace orbits
