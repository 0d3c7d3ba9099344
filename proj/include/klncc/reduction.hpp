#pragma once

#include <string>
#include <utility>
#include <vector>

#include "klncc/cnf.hpp"
#include "klncc/dimacs.hpp"
#include "klncc/graph.hpp"

namespace klncc {

enum class ReductionKind { ThreeSatMulti, ThreeO3SatSimple, ThreeO3SatUndirected };

inline const char* reduction_kind_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::ThreeSatMulti: return "3sat-multi";
    case ReductionKind::ThreeO3SatSimple: return "3o3sat-simple";
    case ReductionKind::ThreeO3SatUndirected: return "3o3sat-undirected";
  }
  return "?";
}

// One literal occurrence's gadget slot: the in-lobe subpath that traversal of
// the corresponding literal takes, plus the two connection edges tying it to
// its clause's (u_k, v_k) pair. Crossing clause k via this literal is the
// walk  u_k -> entry -> ... -> exit -> v_k  with edges
// conn_in, lobe_path..., conn_out.
struct LobeSlot {
  VertexId entry = -1;
  VertexId exit = -1;
  std::vector<EdgeId> lobe_path;
  EdgeId conn_in = -1;
  EdgeId conn_out = -1;
  int clause = -1;  // 0-based
  bool positive = false;
};

// A reduction output: the auxiliary graph plus the provenance needed to
// translate witnesses in both directions (clause vertex pairs, per-occurrence
// lobe slots, the chain/closing edges). Immutable once built.
struct ReductionArtifact {
  CostGraph graph{GraphMode::SimpleDirected};
  ReductionKind kind = ReductionKind::ThreeO3SatSimple;
  int m = 0;
  int num_vars = 0;
  CnfFormula formula;                                   // the formula that was reduced
  std::vector<bool> flips;                              // polarity map from the caller's
                                                        // pre-normalization formula; empty = identity
  std::vector<std::pair<VertexId, VertexId>> clause_pairs;  // (u_k, v_k), k = 0..m-1
  std::vector<EdgeId> chain_edges;                      // (v_k, u_{k+1}), k = 0..m-2
  EdgeId closing_edge = -1;                             // (v_m, u_1)
  VertexId fixed_point = -1;                            // u_1; set for the multigraph kind
  std::vector<std::vector<LobeSlot>> lobes;             // [var-1][occurrence j]
};

// 3SAT -> directed multigraph. A satisfying assignment corresponds to a
// closed negative-cost trail through u_1 whose contained cycles all have
// length >= 3, and vice versa.
//
// Per variable one lobe: two vertices y_i, z_i with one cost -1 copy of
// (y_i, z_i) per positive occurrence and one cost -1 copy of (z_i, y_i) per
// negative occurrence. Per clause a pair u_k, v_k; cost-0 chain edges
// (v_k, u_{k+1}); closing edge (v_m, u_1) of cost m-1; two cost-0 connection
// edges per occurrence. Total trail cost for an encoded witness is
// -m + (m-1) = -1.
inline ReductionArtifact reduce_3sat_multigraph(const CnfFormula& f) {
  int m = f.num_clauses();
  if (m == 0) raise(Errc::EmptyFormula, "reduction needs at least one clause");
  ReductionArtifact art;
  art.kind = ReductionKind::ThreeSatMulti;
  art.graph = CostGraph(GraphMode::Multigraph);
  art.m = m;
  art.num_vars = f.num_vars;
  art.formula = f;
  CostGraph& g = art.graph;

  for (int k = 0; k < m; ++k) {
    VertexId u = g.add_vertex("u" + std::to_string(k + 1));
    VertexId v = g.add_vertex("v" + std::to_string(k + 1));
    art.clause_pairs.emplace_back(u, v);
  }
  auto prof = occurrence_profile(f);
  std::vector<std::pair<VertexId, VertexId>> lobe_vertices;  // (y_i, z_i)
  for (int i = 0; i < f.num_vars; ++i) {
    std::string x = "x" + std::to_string(i + 1);
    VertexId y = g.add_vertex(x + ".y");
    VertexId z = g.add_vertex(x + ".z");
    lobe_vertices.emplace_back(y, z);
  }

  for (int k = 0; k + 1 < m; ++k)
    art.chain_edges.push_back(
        g.add_edge(art.clause_pairs[(std::size_t)k].second,
                   art.clause_pairs[(std::size_t)k + 1].first, Rational(0)));
  art.closing_edge = g.add_edge(art.clause_pairs[(std::size_t)m - 1].second,
                                art.clause_pairs[0].first, Rational(m - 1));
  art.fixed_point = art.clause_pairs[0].first;

  art.lobes.resize((std::size_t)f.num_vars);
  for (int i = 0; i < f.num_vars; ++i) {
    auto [y, z] = lobe_vertices[(std::size_t)i];
    for (const OccurrenceSite& site : prof[(std::size_t)i].sites) {
      LobeSlot slot;
      slot.clause = site.clause;
      slot.positive = site.positive;
      slot.entry = site.positive ? y : z;
      slot.exit = site.positive ? z : y;
      slot.lobe_path.push_back(g.add_edge(slot.entry, slot.exit, Rational(-1)));
      art.lobes[(std::size_t)i].push_back(std::move(slot));
    }
  }

  for (int k = 0; k < m; ++k) {
    auto [u, v] = art.clause_pairs[(std::size_t)k];
    for (Literal lit : f.clauses[(std::size_t)k]) {
      int var = std::abs(lit);
      for (LobeSlot& slot : art.lobes[(std::size_t)(var - 1)]) {
        if (slot.clause != k) continue;
        slot.conn_in = g.add_edge(u, slot.entry, Rational(0));
        slot.conn_out = g.add_edge(slot.exit, v, Rational(0));
      }
    }
  }
  return art;
}

// Normalized 3O3SAT -> simple digraph. A satisfying assignment corresponds
// to a simple negative-cost cycle of length >= 3, and vice versa.
//
// Clause chain as above but with a closing edge of cost -1. Lobes depend on
// the variable's occurrence pattern:
//   one positive occurrence each  -> edge (y^j, z^j) of cost -2m
//   Case 2 (one +, one -)         -> the two edges are anti-parallel between
//                                    the same vertex pair (z^jn = y^jp,
//                                    y^jn = z^jp); the negative literal's
//                                    edge costs 1/(m+1)
//   Case 3 (two +, one -)         -> z^j3 = y^j1, y^j3 = z^j2 and the
//                                    negative literal runs the 3-edge path
//                                    z^j2 -> y^j2 -> z^j1 -> y^j1 with costs
//                                    1/(2m+2), 0, 1/(2m+2)
// Connection edges (u_k, y^j) and (z^j, v_k) cost m for positive occurrences
// and 0 for negative ones, so a positive crossing sums m - 2m + m = 0 and a
// negative crossing sums exactly 1/(m+1).
inline ReductionArtifact reduce_3o3sat_simple(const CnfFormula& f) {
  int m = f.num_clauses();
  if (m == 0) raise(Errc::EmptyFormula, "reduction needs at least one clause");
  if (!validate_3o3sat(f).empty()) raise(Errc::Not3O3SAT, "a variable occurs more than 3 times");
  auto prof = occurrence_profile(f);
  for (int i = 0; i < f.num_vars; ++i) {
    auto c = classify_occurrences(prof[(std::size_t)i]);
    if (c == OccurrenceCase::Case4 || c == OccurrenceCase::Case5)
      raise(Errc::NotNormalized,
            "variable x" + std::to_string(i + 1) + " has more negative than positive occurrences");
  }

  ReductionArtifact art;
  art.kind = ReductionKind::ThreeO3SatSimple;
  art.graph = CostGraph(GraphMode::SimpleDirected);
  art.m = m;
  art.num_vars = f.num_vars;
  art.formula = f;
  CostGraph& g = art.graph;
  const Rational big_neg(-2 * m);
  const Rational neg_lit(1, m + 1);
  const Rational neg_half(1, 2 * m + 2);

  for (int k = 0; k < m; ++k) {
    VertexId u = g.add_vertex("u" + std::to_string(k + 1));
    VertexId v = g.add_vertex("v" + std::to_string(k + 1));
    art.clause_pairs.emplace_back(u, v);
  }
  for (int k = 0; k + 1 < m; ++k)
    art.chain_edges.push_back(
        g.add_edge(art.clause_pairs[(std::size_t)k].second,
                   art.clause_pairs[(std::size_t)k + 1].first, Rational(0)));
  art.closing_edge = g.add_edge(art.clause_pairs[(std::size_t)m - 1].second,
                                art.clause_pairs[0].first, Rational(-1));

  art.lobes.resize((std::size_t)f.num_vars);
  for (int i = 0; i < f.num_vars; ++i) {
    const OccurrenceProfile& p = prof[(std::size_t)i];
    std::string x = "x" + std::to_string(i + 1);
    auto& slots = art.lobes[(std::size_t)i];
    slots.resize(p.sites.size());
    for (std::size_t j = 0; j < p.sites.size(); ++j) {
      slots[j].clause = p.sites[j].clause;
      slots[j].positive = p.sites[j].positive;
    }
    auto name = [&](const char* role, std::size_t j) {
      return x + "." + role + std::to_string(j + 1);
    };
    switch (classify_occurrences(p)) {
      case OccurrenceCase::Unused:
        break;
      case OccurrenceCase::Case1: {
        for (std::size_t j = 0; j < p.sites.size(); ++j) {
          VertexId y = g.add_vertex(name("y", j));
          VertexId z = g.add_vertex(name("z", j));
          slots[j].entry = y;
          slots[j].exit = z;
          slots[j].lobe_path.push_back(g.add_edge(y, z, big_neg));
        }
        break;
      }
      case OccurrenceCase::Case2: {
        std::size_t jp = p.sites[0].positive ? 0 : 1;
        std::size_t jn = 1 - jp;
        VertexId a = g.add_vertex(name("y", jp));  // y^jp = z^jn
        VertexId b = g.add_vertex(name("z", jp));  // z^jp = y^jn
        slots[jp].entry = a;
        slots[jp].exit = b;
        slots[jp].lobe_path.push_back(g.add_edge(a, b, big_neg));
        slots[jn].entry = b;
        slots[jn].exit = a;
        slots[jn].lobe_path.push_back(g.add_edge(b, a, neg_lit));
        break;
      }
      case OccurrenceCase::Case3: {
        std::size_t j1 = 3, j2 = 3, j3 = 3;
        for (std::size_t j = 0; j < p.sites.size(); ++j) {
          if (!p.sites[j].positive)
            j3 = j;
          else if (j1 == 3)
            j1 = j;
          else
            j2 = j;
        }
        VertexId y1 = g.add_vertex(name("y", j1));
        VertexId z1 = g.add_vertex(name("z", j1));
        VertexId y2 = g.add_vertex(name("y", j2));
        VertexId z2 = g.add_vertex(name("z", j2));
        slots[j1].entry = y1;
        slots[j1].exit = z1;
        slots[j1].lobe_path.push_back(g.add_edge(y1, z1, big_neg));
        slots[j2].entry = y2;
        slots[j2].exit = z2;
        slots[j2].lobe_path.push_back(g.add_edge(y2, z2, big_neg));
        // negative literal: z^j3 = y^j1, y^j3 = z^j2
        slots[j3].entry = z2;
        slots[j3].exit = y1;
        slots[j3].lobe_path.push_back(g.add_edge(z2, y2, neg_half));
        slots[j3].lobe_path.push_back(g.add_edge(y2, z1, Rational(0)));
        slots[j3].lobe_path.push_back(g.add_edge(z1, y1, neg_half));
        break;
      }
      default:
        raise(Errc::NotNormalized, "unexpected occurrence pattern for x" + std::to_string(i + 1));
    }
  }

  for (int k = 0; k < m; ++k) {
    auto [u, v] = art.clause_pairs[(std::size_t)k];
    for (Literal lit : f.clauses[(std::size_t)k]) {
      int var = std::abs(lit);
      for (LobeSlot& slot : art.lobes[(std::size_t)(var - 1)]) {
        if (slot.clause != k) continue;
        Rational c = slot.positive ? Rational(m) : Rational(0);
        slot.conn_in = g.add_edge(u, slot.entry, c);
        slot.conn_out = g.add_edge(slot.exit, v, c);
      }
    }
  }
  return art;
}

// How a subdivided lobe edge distributes its cost over the two halves.
// Split keeps the pair total equal to the original cost, which preserves the
// m / -2m / m cancellation the path-cost bounds rest on; Duplicate puts the
// original cost on both halves and is exposed for experimentation only.
enum class SubdivisionCostMode { Split, Duplicate };

// Undirected variant: take the simple-digraph construction, subdivide every
// lobe edge through a fresh midpoint, and drop directions. k >= 4 because
// the subdivided anti-parallel lobe pairs leave short undirected cycles
// inside the lobes that only a length bound above 3 could exclude.
inline ReductionArtifact reduce_undirected(const CnfFormula& f, int k,
                                           SubdivisionCostMode mode = SubdivisionCostMode::Split) {
  if (k < 4) raise(Errc::KTooSmall, "undirected variant needs k >= 4");
  ReductionArtifact dir = reduce_3o3sat_simple(f);

  std::vector<char> is_lobe((std::size_t)dir.graph.edge_count(), 0);
  for (const auto& slots : dir.lobes)
    for (const LobeSlot& s : slots)
      for (EdgeId e : s.lobe_path) is_lobe[(std::size_t)e] = 1;

  ReductionArtifact art;
  art.kind = ReductionKind::ThreeO3SatUndirected;
  art.graph = CostGraph(GraphMode::SimpleUndirected);
  art.m = dir.m;
  art.num_vars = dir.num_vars;
  art.formula = dir.formula;
  CostGraph& g = art.graph;
  for (VertexId v = 0; v < dir.graph.vertex_count(); ++v) g.add_vertex(dir.graph.label(v));

  std::vector<std::vector<EdgeId>> remap((std::size_t)dir.graph.edge_count());
  for (EdgeId e = 0; e < dir.graph.edge_count(); ++e) {
    const Edge& ed = dir.graph.edge(e);
    if (is_lobe[(std::size_t)e]) {
      VertexId w = g.add_vertex("w" + std::to_string(e));
      Rational second = mode == SubdivisionCostMode::Split ? Rational(0) : ed.cost;
      remap[(std::size_t)e].push_back(g.add_edge(ed.tail, w, ed.cost));
      remap[(std::size_t)e].push_back(g.add_edge(w, ed.head, second));
    } else {
      remap[(std::size_t)e].push_back(g.add_edge(ed.tail, ed.head, ed.cost));
    }
  }

  art.clause_pairs = dir.clause_pairs;
  for (EdgeId e : dir.chain_edges) art.chain_edges.push_back(remap[(std::size_t)e].front());
  art.closing_edge = remap[(std::size_t)dir.closing_edge].front();
  art.lobes.resize(dir.lobes.size());
  for (std::size_t i = 0; i < dir.lobes.size(); ++i) {
    for (const LobeSlot& s : dir.lobes[i]) {
      LobeSlot ns = s;
      ns.lobe_path.clear();
      for (EdgeId e : s.lobe_path)
        for (EdgeId ne : remap[(std::size_t)e]) ns.lobe_path.push_back(ne);
      ns.conn_in = remap[(std::size_t)s.conn_in].front();
      ns.conn_out = remap[(std::size_t)s.conn_out].front();
      art.lobes[i].push_back(std::move(ns));
    }
  }
  return art;
}

namespace detail {

// Clause-by-clause literal choice used by both encoders: among the clause's
// literals true under `a`, pick the one with the lowest variable index. The
// rule is deterministic, which pins encoded witness costs exactly.
inline std::vector<const LobeSlot*> choose_slots(const ReductionArtifact& art,
                                                 const Assignment& a) {
  const CnfFormula& f = art.formula;
  if (!evaluate(f, a))
    raise(Errc::AssignmentDoesNotSatisfy, "assignment does not satisfy the formula");
  std::vector<const LobeSlot*> chosen;
  for (int k = 0; k < f.num_clauses(); ++k) {
    int best_var = 0;
    for (Literal lit : f.clauses[(std::size_t)k]) {
      if (!literal_true(lit, a)) continue;
      int var = std::abs(lit);
      if (best_var == 0 || var < best_var) best_var = var;
    }
    const LobeSlot* slot = nullptr;
    for (const LobeSlot& s : art.lobes[(std::size_t)(best_var - 1)])
      if (s.clause == k) slot = &s;
    chosen.push_back(slot);
  }
  return chosen;
}

inline Walk assemble_witness(const ReductionArtifact& art,
                             const std::vector<const LobeSlot*>& chosen) {
  Walk w;
  w.start = art.clause_pairs[0].first;
  for (int k = 0; k < art.m; ++k) {
    const LobeSlot* s = chosen[(std::size_t)k];
    w.edges.push_back(s->conn_in);
    for (EdgeId e : s->lobe_path) w.edges.push_back(e);
    w.edges.push_back(s->conn_out);
    if (k + 1 < art.m) w.edges.push_back(art.chain_edges[(std::size_t)k]);
  }
  w.edges.push_back(art.closing_edge);
  return w;
}

}  // namespace detail

// Satisfying assignment -> simple cycle witness (simple-digraph or
// undirected artifact). Concatenates one literal subpath per clause with the
// chain and closing edges; cost is t/(m+1) - 1 where t counts the clauses
// whose chosen satisfying literal is negative, hence always within
// [-1, -1/(m+1)].
inline CycleWitness encode_witness_cycle(const ReductionArtifact& art, const Assignment& a) {
  if (art.kind == ReductionKind::ThreeSatMulti)
    raise(Errc::InvalidParameter, "cycle encoding needs a simple or undirected artifact");
  return detail::assemble_witness(art, detail::choose_slots(art, a));
}

// Satisfying assignment -> closed trail witness through u_1 (multigraph
// artifact). Uses one lobe-edge copy per clause; cost is -m + (m-1) = -1.
// Never traverses both directions of a lobe, so no contained 2-cycles.
inline TrailWitness encode_witness_trail(const ReductionArtifact& art, const Assignment& a) {
  if (art.kind != ReductionKind::ThreeSatMulti)
    raise(Errc::InvalidParameter, "trail encoding needs the multigraph artifact");
  return detail::assemble_witness(art, detail::choose_slots(art, a));
}

// Expected verified-witness parameters for each artifact kind.
inline int witness_k(const ReductionArtifact& art) {
  return art.kind == ReductionKind::ThreeO3SatUndirected ? 4 : 3;
}

// Verified witness -> satisfying assignment.
//   multigraph kind: x_i is true iff the trail uses one of its positive
//   copies, false otherwise.
//   simple/undirected kinds: x_i is false iff the cycle uses an edge of its
//   negative literal's subpath, true otherwise.
// Throws NotAWitness unless the walk passes the matching verifier at the
// kind's k (3 directed, 4 undirected) and, for the multigraph kind, the
// fixed point u_1.
inline Assignment decode_assignment(const ReductionArtifact& art, const Walk& w,
                                    CycleFilter filter = CycleFilter::All) {
  std::string why;
  bool ok = art.kind == ReductionKind::ThreeSatMulti
                ? verify_fpklncct_witness(art.graph, w, art.fixed_point, witness_k(art), filter,
                                          &why)
                : verify_klncc_witness(art.graph, w, witness_k(art), &why);
  if (!ok) raise(Errc::NotAWitness, why);

  std::vector<char> used((std::size_t)art.graph.edge_count(), 0);
  for (EdgeId e : w.edges) used[(std::size_t)e] = 1;
  Assignment a((std::size_t)art.num_vars, art.kind != ReductionKind::ThreeSatMulti);
  for (int i = 0; i < art.num_vars; ++i) {
    for (const LobeSlot& s : art.lobes[(std::size_t)i]) {
      bool touched = false;
      for (EdgeId e : s.lobe_path)
        if (used[(std::size_t)e]) touched = true;
      if (!touched) continue;
      if (art.kind == ReductionKind::ThreeSatMulti) {
        if (s.positive) a[(std::size_t)i] = true;
      } else {
        if (!s.positive) a[(std::size_t)i] = false;
      }
    }
  }
  return a;
}

}  // namespace klncc
