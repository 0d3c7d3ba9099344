#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klncc/dimacs.hpp"
#include "klncc/dpll.hpp"
#include "klncc/harness.hpp"

using namespace klncc;

namespace {

const char* kExample = "p cnf 4 3\n1 3 0\n-1 2 4 0\n1 -2 4 0\n";

// Exhaustive 2^n oracle, independent of the DPLL search path.
bool brute_force_sat(const CnfFormula& f) {
  REQUIRE(f.num_vars <= 20);
  for (std::uint64_t bits = 0; bits < (1ULL << f.num_vars); ++bits) {
    Assignment a;
    for (int v = 0; v < f.num_vars; ++v) a.push_back((bits >> v) & 1);
    if (evaluate(f, a)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parse_dimacs: smallest instance and header checks") {
  CnfFormula f = dimacs_from_text("p cnf 1 1\n1 0\n");
  CHECK(f.num_vars == 1);
  CHECK(f.num_clauses() == 1);
  CHECK(f.clauses[0] == Clause{1});

  CnfFormula example = dimacs_from_text(kExample);
  CHECK(example.num_vars == 4);
  CHECK(example.num_clauses() == 3);

  CHECK_THROWS_AS(dimacs_from_text("1 0\n"), Error);                 // no header
  CHECK_THROWS_AS(dimacs_from_text("p cnf 2 2\n1 0\n"), Error);      // count mismatch
  CHECK_THROWS_AS(dimacs_from_text("p cnf 1 1\n1\n"), Error);        // unterminated
  CHECK_THROWS_AS(dimacs_from_text("p cnf 1 1\n2 0\n"), Error);      // var out of range
  CHECK_THROWS_AS(dimacs_from_text("p cnf 1 1\nx 0\n"), Error);      // junk token
}

TEST_CASE("parse_dimacs: clause shape violations carry their own errors") {
  CHECK_THROWS_WITH_AS(dimacs_from_text("p cnf 2 1\n1 -1 0\n"),
                       doctest::Contains("Tautological"), Error);
  CHECK_THROWS_WITH_AS(dimacs_from_text("p cnf 2 1\n1 1 0\n"),
                       doctest::Contains("DuplicateLiteral"), Error);
  CHECK_THROWS_WITH_AS(dimacs_from_text("p cnf 4 1\n1 2 3 4 0\n"),
                       doctest::Contains("ClauseTooLarge"), Error);
  CHECK_THROWS_AS(dimacs_from_text("p cnf 1 1\n0\n"), Error);  // empty clause
}

TEST_CASE("parse_dimacs: comments, blank lines, clauses spanning lines") {
  CnfFormula f = dimacs_from_text("c header comment\n\np cnf 3 2\n1 2\n3 0 -1 0\n");
  CHECK(f.num_clauses() == 2);
  CHECK(f.clauses[0] == Clause{1, 2, 3});
  CHECK(f.clauses[1] == Clause{-1});
}

TEST_CASE("emit/parse is the identity on canonical DIMACS") {
  Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    int n = 2 + rng.below(7);
    CnfFormula f = gen_random_3o3sat(n, 1 + rng.below(std::min(8, 3 * n)), rng.next());
    std::string text = dimacs_to_text(f);
    CnfFormula back = dimacs_from_text(text);
    CHECK(dimacs_to_text(back) == text);
    CHECK(back.clauses == f.clauses);
  }
}

TEST_CASE("occurrence_profile: counts and clause-ordered sites") {
  CnfFormula example = dimacs_from_text(kExample);
  auto prof = occurrence_profile(example);
  CHECK(prof[0].positive_count == 2);
  CHECK(prof[0].negative_count == 1);
  REQUIRE(prof[0].sites.size() == 3);
  CHECK(prof[0].sites[0].clause == 0);
  CHECK(prof[0].sites[0].positive);
  CHECK(prof[0].sites[1].clause == 1);
  CHECK_FALSE(prof[0].sites[1].positive);
  CHECK(prof[0].sites[2].clause == 2);
  CHECK(prof[0].sites[2].positive);
  CHECK(prof[2].positive_count == 1);
  CHECK(prof[2].negative_count == 0);

  CnfFormula unused = dimacs_from_text("p cnf 3 1\n1 2 0\n");
  auto prof2 = occurrence_profile(unused);
  CHECK(prof2[2].positive_count == 0);
  CHECK(prof2[2].negative_count == 0);
  CHECK(classify_occurrences(prof2[2]) == OccurrenceCase::Unused);
}

TEST_CASE("validate_3o3sat") {
  CHECK(validate_3o3sat(dimacs_from_text(kExample)).empty());
  CHECK(validate_3o3sat(CnfFormula::create(0, {})).empty());
  CnfFormula four = dimacs_from_text("p cnf 2 4\n1 0\n1 2 0\n1 -2 0\n-1 2 0\n");
  auto viol = validate_3o3sat(four);
  REQUIRE(viol.size() == 1);
  CHECK(viol[0] == 1);
}

TEST_CASE("normalize_occurrences: Case 4 flips to Case 1, identity otherwise") {
  // {(~x1), (~x1 v x2)}: x1 is all-negative
  CnfFormula f = dimacs_from_text("p cnf 2 2\n-1 0\n-1 2 0\n");
  NormalizeResult r = normalize_occurrences(f);
  CHECK(r.flipped == std::vector<bool>{true, false});
  CHECK(r.formula.clauses[0] == Clause{1});
  CHECK(r.formula.clauses[1] == Clause{1, 2});

  CnfFormula example = dimacs_from_text(kExample);
  NormalizeResult same = normalize_occurrences(example);
  CHECK(same.formula.clauses == example.clauses);
  CHECK(std::none_of(same.flipped.begin(), same.flipped.end(), [](bool b) { return b; }));
}

TEST_CASE("normalize_occurrences: Case 5 flips to Case 3 and preserves satisfiability") {
  // x1: one positive, two negative occurrences
  CnfFormula f = dimacs_from_text("p cnf 2 3\n1 2 0\n-1 0\n-1 -2 0\n");
  auto prof = occurrence_profile(f);
  CHECK(classify_occurrences(prof[0]) == OccurrenceCase::Case5);
  NormalizeResult r = normalize_occurrences(f);
  auto nprof = occurrence_profile(r.formula);
  CHECK(classify_occurrences(nprof[0]) == OccurrenceCase::Case3);
  CHECK(dpll_solve(f).has_value() == dpll_solve(r.formula).has_value());
  auto a = dpll_solve(r.formula);
  REQUIRE(a.has_value());
  CHECK(evaluate(f, apply_flips(*a, r.flipped)));
}

TEST_CASE("property: normalization preserves satisfiability and lands in Cases 1-3") {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.below(7);
    CnfFormula f = gen_random_3o3sat(n, 1 + rng.below(std::min(8, 3 * n)), rng.next());
    NormalizeResult r = normalize_occurrences(f);
    for (const auto& p : occurrence_profile(r.formula)) {
      auto c = classify_occurrences(p);
      CHECK(c != OccurrenceCase::Case4);
      CHECK(c != OccurrenceCase::Case5);
    }
    CHECK(dpll_solve(f).has_value() == dpll_solve(r.formula).has_value());
  }
}

TEST_CASE("dpll_solve: trivial cases and the running example") {
  CHECK(dpll_solve(CnfFormula::create(3, {})).has_value());
  CHECK_FALSE(dpll_solve(dimacs_from_text("p cnf 1 2\n1 0\n-1 0\n")).has_value());
  CnfFormula example = dimacs_from_text(kExample);
  auto a = dpll_solve(example);
  REQUIRE(a.has_value());
  CHECK(evaluate(example, *a));
}

TEST_CASE("dpll_solve is deterministic") {
  CnfFormula f = gen_random_3o3sat(6, 8, 42);
  auto a1 = dpll_solve(f);
  auto a2 = dpll_solve(f);
  REQUIRE(a1.has_value() == a2.has_value());
  if (a1) CHECK(*a1 == *a2);
}

TEST_CASE("property: dpll agrees with the exhaustive oracle, n <= 12") {
  Rng rng(5150);
  for (int i = 0; i < 300; ++i) {
    int n = 1 + rng.below(12);
    int m = 1 + rng.below(std::min(10, 3 * n));
    CnfFormula f = gen_random_3o3sat(n, m, rng.next());
    auto got = dpll_solve(f);
    CHECK(got.has_value() == brute_force_sat(f));
    if (got) CHECK(evaluate(f, *got));
  }
}

TEST_CASE("evaluate: hand-checked assignments on the running example") {
  CnfFormula example = dimacs_from_text(kExample);
  CHECK(evaluate(example, Assignment{true, false, false, true}));
  CHECK_FALSE(evaluate(example, Assignment{false, false, false, false}));  // C1 fails
  CHECK(evaluate(CnfFormula::create(2, {}), Assignment{false, true}));
  CHECK_THROWS_AS(evaluate(example, Assignment{true, true}), Error);  // not total
}
