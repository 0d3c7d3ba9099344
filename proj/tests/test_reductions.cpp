#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "klncc/detect.hpp"
#include "klncc/dpll.hpp"
#include "klncc/harness.hpp"
#include "klncc/reduction.hpp"
#include "klncc/reduction_io.hpp"

using namespace klncc;

namespace {

const char* kExample = "p cnf 4 3\n1 3 0\n-1 2 4 0\n1 -2 4 0\n";

CnfFormula example_formula() { return dimacs_from_text(kExample); }

// Counts an artifact must have, derived from the occurrence profile alone;
// cross-checks the constructed graphs without walking them.
struct ExpectedCounts {
  int vertices = 0;
  int edges = 0;
};

ExpectedCounts expect_multigraph(const CnfFormula& f) {
  int occ = 0;
  for (const Clause& c : f.clauses) occ += (int)c.size();
  ExpectedCounts e;
  e.vertices = 2 * f.num_clauses() + 2 * f.num_vars;
  e.edges = f.num_clauses() /* chain + closing */ + occ /* lobe copies */ + 2 * occ;
  return e;
}

ExpectedCounts expect_simple(const CnfFormula& f) {
  ExpectedCounts e;
  e.vertices = 2 * f.num_clauses();
  e.edges = f.num_clauses();
  int occ = 0;
  for (const auto& p : occurrence_profile(f)) {
    occ += p.total();
    switch (classify_occurrences(p)) {
      case OccurrenceCase::Case1:
        e.vertices += 2 * p.positive_count;
        e.edges += p.positive_count;
        break;
      case OccurrenceCase::Case2:
        e.vertices += 2;
        e.edges += 2;
        break;
      case OccurrenceCase::Case3:
        e.vertices += 4;
        e.edges += 5;
        break;
      default:
        break;
    }
  }
  e.edges += 2 * occ;
  return e;
}

}  // namespace

TEST_CASE("multigraph reduction: running example has 14 vertices, 27 edges, closing cost 2") {
  CnfFormula f = example_formula();
  ReductionArtifact art = reduce_3sat_multigraph(f);
  CHECK(art.graph.mode() == GraphMode::Multigraph);
  CHECK(art.graph.vertex_count() == 14);
  CHECK(art.graph.edge_count() == 27);
  ExpectedCounts exp = expect_multigraph(f);
  CHECK(art.graph.vertex_count() == exp.vertices);
  CHECK(art.graph.edge_count() == exp.edges);
  CHECK(art.graph.edge(art.closing_edge).cost == Rational(2));  // m - 1
  CHECK(art.fixed_point == art.clause_pairs[0].first);
  CHECK(art.graph.label(art.fixed_point) == "u1");
}

TEST_CASE("multigraph reduction: single clause closes with cost 0") {
  ReductionArtifact art = reduce_3sat_multigraph(dimacs_from_text("p cnf 1 1\n1 0\n"));
  CHECK(art.graph.edge(art.closing_edge).cost == Rational(0));
  CHECK_THROWS_AS(reduce_3sat_multigraph(CnfFormula::create(1, {})), Error);
}

TEST_CASE("multigraph reduction: repeated positive literal yields parallel copies") {
  // x1 twice positively, never negatively: 2 parallel (y,z) copies, 0 reverse
  CnfFormula f = dimacs_from_text("p cnf 2 2\n1 0\n1 2 0\n");
  ReductionArtifact art = reduce_3sat_multigraph(f);
  const auto& slots = art.lobes[0];
  REQUIRE(slots.size() == 2);
  CHECK(slots[0].lobe_path.size() == 1);
  EdgeId c1 = slots[0].lobe_path[0], c2 = slots[1].lobe_path[0];
  CHECK(c1 != c2);
  CHECK(art.graph.edge(c1).tail == art.graph.edge(c2).tail);
  CHECK(art.graph.edge(c1).head == art.graph.edge(c2).head);
  CHECK(art.graph.edge(c1).cost == Rational(-1));
}

TEST_CASE("multigraph reduction: structural facts the equivalence proof uses") {
  ReductionArtifact art = reduce_3sat_multigraph(example_formula());
  const CostGraph& g = art.graph;
  // the closing edge is the only one entering u_1
  int into_u1 = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).head == art.fixed_point) ++into_u1;
  CHECK(into_u1 == 1);
  CHECK(g.edge(art.closing_edge).head == art.fixed_point);
  // v_i has out-degree 1 for i < m
  for (int i = 0; i + 1 < art.m; ++i)
    CHECK(g.out(art.clause_pairs[(std::size_t)i].second).size() == 1);
  // every lobe edge costs -1, connections cost 0
  for (const auto& slots : art.lobes)
    for (const LobeSlot& s : slots) {
      for (EdgeId e : s.lobe_path) CHECK(g.edge(e).cost == Rational(-1));
      CHECK(g.edge(s.conn_in).cost == Rational(0));
      CHECK(g.edge(s.conn_out).cost == Rational(0));
    }
}

TEST_CASE("simple reduction: running example has 18 vertices, 29 edges") {
  CnfFormula f = example_formula();
  ReductionArtifact art = reduce_3o3sat_simple(f);
  CHECK(art.graph.mode() == GraphMode::SimpleDirected);
  CHECK(art.graph.vertex_count() == 18);
  CHECK(art.graph.edge_count() == 29);
  ExpectedCounts exp = expect_simple(f);
  CHECK(art.graph.vertex_count() == exp.vertices);
  CHECK(art.graph.edge_count() == exp.edges);
  CHECK(art.graph.edge(art.closing_edge).cost == Rational(-1));
}

TEST_CASE("simple reduction: case costs on the running example (m = 3)") {
  CnfFormula f = example_formula();
  ReductionArtifact art = reduce_3o3sat_simple(f);
  const CostGraph& g = art.graph;
  // x1 is Case 3: positive edges cost -2m = -6, negation path 1/8, 0, 1/8
  const auto& x1 = art.lobes[0];
  REQUIRE(x1.size() == 3);
  CHECK(g.edge(x1[0].lobe_path[0]).cost == Rational(-6));
  CHECK(g.edge(x1[2].lobe_path[0]).cost == Rational(-6));
  REQUIRE(x1[1].lobe_path.size() == 3);
  CHECK(g.edge(x1[1].lobe_path[0]).cost == Rational(1, 8));
  CHECK(g.edge(x1[1].lobe_path[1]).cost == Rational(0));
  CHECK(g.edge(x1[1].lobe_path[2]).cost == Rational(1, 8));
  // Case 3 aliasing: negation runs from z^j2 back to y^j1
  CHECK(x1[1].entry == x1[2].exit);
  CHECK(x1[1].exit == x1[0].entry);
  // connection costs: positive m, negative 0
  CHECK(g.edge(x1[0].conn_in).cost == Rational(3));   // x1 in C1
  CHECK(g.edge(x1[0].conn_out).cost == Rational(3));
  CHECK(g.edge(x1[1].conn_in).cost == Rational(0));   // ~x1 in C2
  CHECK(g.edge(x1[1].conn_out).cost == Rational(0));
  // x2 is Case 2: anti-parallel pair sharing its two vertices
  const auto& x2 = art.lobes[1];
  REQUIRE(x2.size() == 2);
  CHECK(g.edge(x2[0].lobe_path[0]).cost == Rational(-6));
  CHECK(g.edge(x2[1].lobe_path[0]).cost == Rational(1, 4));  // 1/(m+1)
  CHECK(x2[0].entry == x2[1].exit);
  CHECK(x2[0].exit == x2[1].entry);
  // x4 is Case 1 with two occurrences: two disjoint -2m edges
  const auto& x4 = art.lobes[3];
  REQUIRE(x4.size() == 2);
  CHECK(g.edge(x4[0].lobe_path[0]).cost == Rational(-6));
  CHECK(g.edge(x4[1].lobe_path[0]).cost == Rational(-6));
  CHECK(x4[0].entry != x4[1].entry);
}

TEST_CASE("simple reduction: preconditions") {
  CHECK_THROWS_WITH_AS(reduce_3o3sat_simple(dimacs_from_text("p cnf 1 2\n-1 0\n-1 0\n")),
                       doctest::Contains("NotNormalized"), Error);
  CHECK_THROWS_WITH_AS(
      reduce_3o3sat_simple(dimacs_from_text("p cnf 2 4\n1 0\n1 2 0\n1 -2 0\n-1 2 0\n")),
      doctest::Contains("Not3O3SAT"), Error);
  CHECK_THROWS_AS(reduce_3o3sat_simple(CnfFormula::create(1, {})), Error);
}

TEST_CASE("undirected reduction: midpoints double the lobe edges") {
  CnfFormula f = example_formula();
  ReductionArtifact dir = reduce_3o3sat_simple(f);
  ReductionArtifact art = reduce_undirected(f, 4);
  CHECK(art.graph.mode() == GraphMode::SimpleUndirected);
  // 10 lobe edges -> 20, one midpoint each
  CHECK(art.graph.vertex_count() == dir.graph.vertex_count() + 10);
  CHECK(art.graph.edge_count() == dir.graph.edge_count() + 10);
  int lobe_edges = 0;
  for (const auto& slots : art.lobes)
    for (const LobeSlot& s : slots) lobe_edges += (int)s.lobe_path.size();
  CHECK(lobe_edges == 20);
  CHECK_THROWS_WITH_AS(reduce_undirected(f, 3), doctest::Contains("KTooSmall"), Error);
}

TEST_CASE("undirected reduction: subdivided pair totals match the original cost") {
  CnfFormula f = example_formula();
  ReductionArtifact dir = reduce_3o3sat_simple(f);
  for (auto mode : {SubdivisionCostMode::Split, SubdivisionCostMode::Duplicate}) {
    ReductionArtifact art = reduce_undirected(f, 4, mode);
    for (std::size_t i = 0; i < art.lobes.size(); ++i) {
      for (std::size_t j = 0; j < art.lobes[i].size(); ++j) {
        Rational undirected_total;
        for (EdgeId e : art.lobes[i][j].lobe_path) undirected_total += art.graph.edge(e).cost;
        Rational directed_total;
        for (EdgeId e : dir.lobes[i][j].lobe_path) directed_total += dir.graph.edge(e).cost;
        if (mode == SubdivisionCostMode::Split)
          CHECK(undirected_total == directed_total);
        else
          CHECK(undirected_total == directed_total + directed_total);
      }
    }
  }
}

TEST_CASE("encode_witness_cycle: pinned costs on the running example") {
  CnfFormula f = example_formula();
  ReductionArtifact art = reduce_3o3sat_simple(f);
  // all-true: every clause satisfied by a positive literal, t = 0
  Walk all_pos = encode_witness_cycle(art, Assignment{true, true, true, true});
  CHECK(walk_cost(art.graph, all_pos) == Rational(-1));
  CHECK(verify_klncc_witness(art.graph, all_pos, 3));
  // x1 = false: C2 goes through the negation subpath, t = 1, cost 1/4 - 1
  Walk via_neg = encode_witness_cycle(art, Assignment{false, true, true, true});
  CHECK(walk_cost(art.graph, via_neg) == Rational(-3, 4));
  CHECK(verify_klncc_witness(art.graph, via_neg, 3));
  // unsatisfying assignment rejected
  CHECK_THROWS_WITH_AS(encode_witness_cycle(art, Assignment{false, false, false, false}),
                       doctest::Contains("AssignmentDoesNotSatisfy"), Error);
}

TEST_CASE("encode_witness_cycle: cost always t/(m+1) - 1 within [-1, -1/(m+1)]") {
  Rng rng(31337);
  int checked = 0;
  while (checked < 120) {
    int n = 2 + rng.below(6);
    int m = 1 + rng.below(std::min(8, 3 * n));
    CnfFormula f = normalize_occurrences(gen_random_3o3sat(n, m, rng.next())).formula;
    auto sat = dpll_solve(f);
    if (!sat) continue;
    ReductionArtifact art = reduce_3o3sat_simple(f);
    Walk w = encode_witness_cycle(art, *sat);
    // recompute t with an independent copy of the selection rule
    int t = 0;
    for (const Clause& c : f.clauses) {
      int best = 0;
      for (Literal lit : c)
        if (literal_true(lit, *sat) && (best == 0 || std::abs(lit) < std::abs(best))) best = lit;
      if (best < 0) ++t;
    }
    Rational expect = Rational(t, m + 1) - Rational(1);
    CHECK(walk_cost(art.graph, w) == expect);
    CHECK(walk_cost(art.graph, w) >= Rational(-1));
    CHECK(walk_cost(art.graph, w) <= Rational(-1, m + 1));
    CHECK(verify_klncc_witness(art.graph, w, 3));
    ++checked;
  }
}

TEST_CASE("encode_witness_trail: cost -1, no lobe crossed in both directions") {
  CnfFormula f = example_formula();
  ReductionArtifact art = reduce_3sat_multigraph(f);
  Assignment a{true, true, true, true};
  Walk w = encode_witness_trail(art, a);
  CHECK(walk_cost(art.graph, w) == Rational(-1));  // -m + (m-1)
  CHECK(verify_fpklncct_witness(art.graph, w, art.fixed_point, 3));
  // never both a (y,z) copy and a (z,y) copy of the same variable
  std::set<EdgeId> used(w.edges.begin(), w.edges.end());
  for (const auto& slots : art.lobes) {
    bool pos = false, neg = false;
    for (const LobeSlot& s : slots)
      for (EdgeId e : s.lobe_path)
        if (used.count(e)) (s.positive ? pos : neg) = true;
    CHECK_FALSE((pos && neg));
  }
  // single-clause formula: closing edge costs 0, trail still costs -1
  ReductionArtifact one = reduce_3sat_multigraph(dimacs_from_text("p cnf 1 1\n1 0\n"));
  Walk w1 = encode_witness_trail(one, Assignment{true});
  CHECK(walk_cost(one.graph, w1) == Rational(-1));
  CHECK(verify_fpklncct_witness(one.graph, w1, one.fixed_point, 3));
}

TEST_CASE("decode_assignment: documented rules and round-trips") {
  CnfFormula f = example_formula();
  ReductionArtifact art = reduce_3o3sat_simple(f);
  // C2 crosses via ~x1 and C3 via ~x2, so both decode to false
  Assignment a{false, false, true, true};
  Walk w = encode_witness_cycle(art, a);
  Assignment back = decode_assignment(art, w);
  CHECK_FALSE(back[0]);
  CHECK_FALSE(back[1]);
  // x4's lobe is untouched by this witness: defaults to true
  CHECK(back[3]);
  CHECK(evaluate(f, back));
  // multigraph: untouched lobe decodes false
  ReductionArtifact multi = reduce_3sat_multigraph(f);
  Walk t = encode_witness_trail(multi, Assignment{true, true, true, true});
  Assignment mback = decode_assignment(multi, t);
  CHECK(evaluate(f, mback));
  CHECK_FALSE(mback[2]);  // x3 true never chosen: C1 picks x1; lobe untouched

  // a non-witness (positive cost) is rejected
  Walk junk;
  junk.start = art.clause_pairs[0].first;
  junk.edges = {art.lobes[0][0].conn_in};
  CHECK_THROWS_WITH_AS(decode_assignment(art, junk), doctest::Contains("NotAWitness"), Error);
}

TEST_CASE("property: encode -> decode -> evaluate over random satisfying pairs") {
  Rng rng(777);
  int done = 0;
  while (done < 60) {
    int n = 2 + rng.below(5);
    int m = 1 + rng.below(std::min(7, 3 * n));
    CnfFormula f = normalize_occurrences(gen_random_3o3sat(n, m, rng.next())).formula;
    auto sat = dpll_solve(f);
    if (!sat) continue;
    ReductionArtifact art = reduce_3o3sat_simple(f);
    Assignment back = decode_assignment(art, encode_witness_cycle(art, *sat));
    CHECK(evaluate(f, back));
    ReductionArtifact multi = reduce_3sat_multigraph(f);
    Assignment mback = decode_assignment(multi, encode_witness_trail(multi, *sat));
    CHECK(evaluate(f, mback));
    ++done;
  }
}

TEST_CASE("undirected artifact: encode, verify at k=4, decode") {
  CnfFormula f = example_formula();
  ReductionArtifact art = reduce_undirected(f, 4);
  Walk w = encode_witness_cycle(art, Assignment{true, true, true, true});
  CHECK(walk_cost(art.graph, w) == Rational(-1));  // split mode preserves totals
  CHECK(verify_klncc_witness(art.graph, w, 4));
  CHECK(evaluate(f, decode_assignment(art, w)));
}

TEST_CASE("artifact serialization round-trips through graph text + sidecar") {
  CnfFormula f = example_formula();
  ReductionArtifact art = build_artifact(f, ReductionKind::ThreeO3SatSimple, 3,
                                         SubdivisionCostMode::Split);
  nlohmann::json j = artifact_provenance_json(art);
  CostGraph g = graph_from_text(graph_to_text(art.graph));
  ReductionArtifact back = artifact_from_parts(g, j);
  CHECK(back.kind == art.kind);
  CHECK(back.m == art.m);
  CHECK(back.closing_edge == art.closing_edge);
  CHECK(back.clause_pairs == art.clause_pairs);
  CHECK(back.formula.clauses == art.formula.clauses);
  REQUIRE(back.lobes.size() == art.lobes.size());
  for (std::size_t i = 0; i < art.lobes.size(); ++i) {
    REQUIRE(back.lobes[i].size() == art.lobes[i].size());
    for (std::size_t s = 0; s < art.lobes[i].size(); ++s) {
      CHECK(back.lobes[i][s].lobe_path == art.lobes[i][s].lobe_path);
      CHECK(back.lobes[i][s].conn_in == art.lobes[i][s].conn_in);
      CHECK(back.lobes[i][s].positive == art.lobes[i][s].positive);
    }
  }
  // a witness encoded against the original decodes against the reloaded copy
  Assignment a{true, true, true, true};
  Walk w = encode_witness_cycle(art, a);
  CHECK(evaluate(f, decode_assignment(back, w)));
}
