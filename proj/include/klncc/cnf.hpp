#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "klncc/error.hpp"

namespace klncc {

// Literals are nonzero signed variable indices, DIMACS style: +v or -v,
// variables 1..n.
using Literal = int;
using Clause = std::vector<Literal>;

// Total truth assignment; index var-1. Solvers always return total
// assignments (free variables are completed with true).
using Assignment = std::vector<bool>;

inline bool literal_true(Literal lit, const Assignment& a) {
  bool v = a[(std::size_t)(std::abs(lit) - 1)];
  return lit > 0 ? v : !v;
}

// Clause list over variables 1..n. Construction enforces the shape every
// consumer here depends on: 1..3 literals per clause, no duplicate literal,
// no complementary pair. Clauses with a variable twice are rejected rather
// than simplified because the reductions index gadget slots by "the j-th
// occurrence of x_i"; silently rewriting a clause would desynchronize them.
struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int num_clauses() const { return (int)clauses.size(); }

  static CnfFormula create(int num_vars, std::vector<Clause> clauses) {
    if (num_vars < 0) raise(Errc::SyntaxError, "negative variable count");
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      const Clause& c = clauses[ci];
      std::string where = "clause " + std::to_string(ci + 1);
      if (c.empty()) raise(Errc::SyntaxError, where + " is empty");
      if (c.size() > 3) raise(Errc::ClauseTooLarge, where);
      for (std::size_t i = 0; i < c.size(); ++i) {
        Literal li = c[i];
        if (li == 0 || std::abs(li) > num_vars)
          raise(Errc::SyntaxError, where + ": literal out of range");
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          if (c[j] == li) raise(Errc::DuplicateLiteral, where);
          if (c[j] == -li) raise(Errc::TautologicalClause, where);
        }
      }
    }
    CnfFormula f;
    f.num_vars = num_vars;
    f.clauses = std::move(clauses);
    return f;
  }
};

// True iff every clause has a true literal under the (total) assignment.
inline bool evaluate(const CnfFormula& f, const Assignment& a) {
  if ((int)a.size() != f.num_vars) raise(Errc::InvalidParameter, "assignment not total");
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (Literal lit : c)
      if (literal_true(lit, a)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

struct OccurrenceSite {
  int clause = -1;  // 0-based clause index
  bool positive = false;
};

// Per-variable occurrence bookkeeping. `sites` is ordered by clause index;
// that order defines the "j-th occurrence" the reductions key their lobe
// slots on (a variable cannot appear twice in one clause, so the order is
// total).
struct OccurrenceProfile {
  int positive_count = 0;  // a_i
  int negative_count = 0;  // b_i
  std::vector<OccurrenceSite> sites;

  int total() const { return positive_count + negative_count; }
};

inline std::vector<OccurrenceProfile> occurrence_profile(const CnfFormula& f) {
  std::vector<OccurrenceProfile> prof((std::size_t)f.num_vars);
  for (int ci = 0; ci < f.num_clauses(); ++ci) {
    for (Literal lit : f.clauses[(std::size_t)ci]) {
      OccurrenceProfile& p = prof[(std::size_t)(std::abs(lit) - 1)];
      bool pos = lit > 0;
      (pos ? p.positive_count : p.negative_count)++;
      p.sites.push_back(OccurrenceSite{ci, pos});
    }
  }
  return prof;
}

// Occurrence-pattern classes. Cases 1-3 are the shapes the simple-digraph
// reduction builds lobes for; 4 and 5 are rewritten onto 1 and 3 by flipping
// the variable's polarity.
enum class OccurrenceCase { Unused, Case1, Case2, Case3, Case4, Case5, TooMany };

inline OccurrenceCase classify_occurrences(const OccurrenceProfile& p) {
  int a = p.positive_count, b = p.negative_count;
  if (a + b > 3) return OccurrenceCase::TooMany;
  if (a == 0 && b == 0) return OccurrenceCase::Unused;
  if (b == 0) return OccurrenceCase::Case1;
  if (a == 1 && b == 1) return OccurrenceCase::Case2;
  if (a == 2 && b == 1) return OccurrenceCase::Case3;
  if (a == 0) return OccurrenceCase::Case4;
  return OccurrenceCase::Case5;  // a == 1, b == 2
}

// Variables occurring more than 3 times, 1-based. Empty result means the
// formula is a valid 3O3SAT instance. Never throws.
inline std::vector<int> validate_3o3sat(const CnfFormula& f) {
  std::vector<int> violations;
  auto prof = occurrence_profile(f);
  for (int v = 1; v <= f.num_vars; ++v)
    if (prof[(std::size_t)(v - 1)].total() > 3) violations.push_back(v);
  return violations;
}

struct NormalizeResult {
  CnfFormula formula;
  // flipped[v-1]: variable v was renamed to its own negation, i.e. a literal
  // of v in the output means the opposite polarity of v in the input. A
  // satisfying assignment maps across by XOR-ing with this vector.
  std::vector<bool> flipped;
};

// Rewrites every Case 4/5 variable by swapping its polarity so that negative
// occurrences never outnumber positive ones (output variables are all
// Unused/Case 1/2/3). Satisfiability is preserved: the renaming is a
// bijection on assignments.
inline NormalizeResult normalize_occurrences(const CnfFormula& f) {
  if (!validate_3o3sat(f).empty()) raise(Errc::Not3O3SAT, "a variable occurs more than 3 times");
  auto prof = occurrence_profile(f);
  NormalizeResult r;
  r.flipped.assign((std::size_t)f.num_vars, false);
  for (int v = 1; v <= f.num_vars; ++v) {
    const OccurrenceProfile& p = prof[(std::size_t)(v - 1)];
    if (p.negative_count > p.positive_count) r.flipped[(std::size_t)(v - 1)] = true;
  }
  std::vector<Clause> clauses = f.clauses;
  for (Clause& c : clauses)
    for (Literal& lit : c)
      if (r.flipped[(std::size_t)(std::abs(lit) - 1)]) lit = -lit;
  r.formula = CnfFormula::create(f.num_vars, std::move(clauses));
  return r;
}

inline Assignment apply_flips(const Assignment& a, const std::vector<bool>& flipped) {
  Assignment out = a;
  for (std::size_t i = 0; i < out.size() && i < flipped.size(); ++i)
    if (flipped[i]) out[i] = !out[i];
  return out;
}

}  // namespace klncc
