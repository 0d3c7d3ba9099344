#pragma once

#include <optional>

#include "klncc/cnf.hpp"

namespace klncc {

namespace detail {

// -1 unassigned, 0 false, 1 true.
inline bool dpll_rec(const CnfFormula& f, std::vector<signed char>& val) {
  // Unit propagation to fixpoint.
  std::vector<int> trail;
  for (;;) {
    bool changed = false;
    for (const Clause& c : f.clauses) {
      int unassigned = 0;
      Literal unit = 0;
      bool sat = false;
      for (Literal lit : c) {
        signed char v = val[(std::size_t)(std::abs(lit) - 1)];
        if (v < 0) {
          ++unassigned;
          unit = lit;
        } else if ((v == 1) == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) {  // conflict: undo propagations
        for (int var : trail) val[(std::size_t)(var - 1)] = -1;
        return false;
      }
      if (unassigned == 1) {
        val[(std::size_t)(std::abs(unit) - 1)] = unit > 0 ? 1 : 0;
        trail.push_back(std::abs(unit));
        changed = true;
      }
    }
    if (!changed) break;
  }
  int branch = 0;
  for (int v = 1; v <= f.num_vars; ++v)
    if (val[(std::size_t)(v - 1)] < 0) {
      branch = v;
      break;
    }
  if (branch == 0) return true;  // total and conflict-free => satisfying
  for (signed char choice : {(signed char)1, (signed char)0}) {
    val[(std::size_t)(branch - 1)] = choice;
    if (dpll_rec(f, val)) return true;
  }
  val[(std::size_t)(branch - 1)] = -1;
  for (int var : trail) val[(std::size_t)(var - 1)] = -1;
  return false;
}

}  // namespace detail

// Complete DPLL search: unit propagation plus branching on the lowest-index
// unassigned variable, true first. Deterministic, so harness failures
// reproduce. Returns a total satisfying assignment (variables the search
// left free are completed with true) or nullopt when the formula is
// unsatisfiable, which the exhaustive search certifies.
inline std::optional<Assignment> dpll_solve(const CnfFormula& f) {
  std::vector<signed char> val((std::size_t)f.num_vars, -1);
  if (!detail::dpll_rec(f, val)) return std::nullopt;
  Assignment a((std::size_t)f.num_vars, true);
  for (int v = 1; v <= f.num_vars; ++v)
    if (val[(std::size_t)(v - 1)] == 0) a[(std::size_t)(v - 1)] = false;
  return a;
}

}  // namespace klncc
