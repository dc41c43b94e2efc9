#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "orbits/cnf.hpp"

namespace orbits {

void write_dimacs(std::ostream& out, const CnfFormula& formula, bool weighted) {
  const int n = formula.num_vars();
  for (int v = 1; v <= n; ++v) out << "c " << v << ' ' << formula.registry.key(v).to_string() << '\n';
  if (!weighted) {
    out << "p cnf " << n << ' ' << formula.hard.size() << '\n';
    for (const Clause& c : formula.hard) {
      for (int l : c) out << l << ' ';
      out << "0\n";
    }
  } else {
    const std::size_t top = formula.soft_units.size() + 1;
    out << "p wcnf " << n << ' ' << formula.hard.size() + formula.soft_units.size() << ' ' << top
        << '\n';
    for (const Clause& c : formula.hard) {
      out << top << ' ';
      for (int l : c) out << l << ' ';
      out << "0\n";
    }
    for (int l : formula.soft_units) out << "1 " << l << " 0\n";
  }
  if (!out) throw DimacsError("failed to write DIMACS output");
}

std::string to_dimacs(const CnfFormula& formula, bool weighted) {
  std::ostringstream os;
  write_dimacs(os, formula, weighted);
  return os.str();
}

DimacsProblem parse_dimacs(std::istream& in) {
  DimacsProblem problem;
  std::string line;
  bool header = false;
  bool weighted = false;
  long long top = 0;
  std::size_t declared = 0;
  Clause current;
  long long current_weight = -1;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw DimacsError("line " + std::to_string(line_no) + ": " + what);
  };
  auto finish = [&]() {
    if (!weighted || current_weight >= top) {
      problem.hard.push_back(current);
    } else {
      if (current.size() != 1) fail("soft clauses must be units");
      problem.soft_units.push_back(current[0]);
    }
    current.clear();
    current_weight = -1;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "p") {
      if (header) fail("duplicate problem line");
      std::string format;
      ls >> format >> problem.num_vars >> declared;
      if (format == "wcnf") {
        weighted = true;
        if (!(ls >> top)) fail("missing top weight");
      } else if (format != "cnf") {
        fail("unknown format '" + format + "'");
      }
      if (!ls && !ls.eof()) fail("malformed problem line");
      header = true;
      continue;
    }
    if (!header) fail("clause before problem line");
    ls.clear();
    ls.str(line);
    long long value = 0;
    while (ls >> value) {
      if (weighted && current_weight < 0) {
        current_weight = value;
        continue;
      }
      if (value == 0) {
        finish();
        continue;
      }
      if (std::llabs(value) > problem.num_vars) fail("literal exceeds declared variable count");
      current.push_back(static_cast<int>(value));
    }
    if (!ls.eof()) fail("unexpected token");
  }
  if (!header) throw DimacsError("missing problem line");
  if (!current.empty()) throw DimacsError("last clause is not terminated by 0");
  if (problem.hard.size() + problem.soft_units.size() != declared) {
    throw DimacsError("clause count does not match problem line");
  }
  return problem;
}

}  // namespace orbits
