#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "klncc/cnf.hpp"

namespace klncc {

// DIMACS CNF: "p cnf <vars> <clauses>" header, zero-terminated clauses,
// 'c' comment lines. Clauses may span lines; the canonical emitter below
// writes one clause per line, which parse/emit round-trips exactly.

inline CnfFormula parse_dimacs(std::istream& is) {
  std::string line;
  int declared_vars = -1, declared_clauses = -1;
  std::vector<Clause> clauses;
  Clause current;
  bool open_clause = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == 'c') continue;
    if (line[0] == '%') break;  // some benchmark files end with "% 0"
    if (line[0] == 'p') {
      if (declared_vars >= 0) raise(Errc::SyntaxError, "duplicate problem line");
      std::istringstream ls(line);
      std::string p, fmt;
      if (!(ls >> p >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" ||
          declared_vars < 0 || declared_clauses < 0)
        raise(Errc::SyntaxError, "bad problem line: " + line);
      std::string rest;
      if (ls >> rest) raise(Errc::SyntaxError, "trailing tokens on problem line");
      continue;
    }
    if (declared_vars < 0) raise(Errc::SyntaxError, "clause before problem line");
    std::istringstream ls(line);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        clauses.push_back(current);
        current.clear();
        open_clause = false;
      } else {
        if (lit > declared_vars || lit < -declared_vars)
          raise(Errc::SyntaxError, "literal out of range: " + std::to_string(lit));
        current.push_back((Literal)lit);
        open_clause = true;
      }
    }
    if (!ls.eof()) raise(Errc::SyntaxError, "non-integer token in clause data");
  }
  if (declared_vars < 0) raise(Errc::SyntaxError, "missing problem line");
  if (open_clause) raise(Errc::SyntaxError, "unterminated clause at end of input");
  if ((int)clauses.size() != declared_clauses)
    raise(Errc::SyntaxError, "header declares " + std::to_string(declared_clauses) +
                                 " clauses, found " + std::to_string(clauses.size()));
  return CnfFormula::create(declared_vars, std::move(clauses));
}

inline CnfFormula dimacs_from_text(const std::string& text) {
  std::istringstream is(text);
  return parse_dimacs(is);
}

inline void emit_dimacs(const CnfFormula& f, std::ostream& os) {
  os << "p cnf " << f.num_vars << " " << f.num_clauses() << "\n";
  for (const Clause& c : f.clauses) {
    for (Literal lit : c) os << lit << " ";
    os << "0\n";
  }
}

inline std::string dimacs_to_text(const CnfFormula& f) {
  std::ostringstream os;
  emit_dimacs(f, os);
  return os.str();
}

}  // namespace klncc
