#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "klncc/graph.hpp"

namespace klncc {

// Caps for the exhaustive searches. Both problems are NP-complete, so
// enumeration can blow up; exceeding a cap aborts with a distinguishable
// outcome instead of a silent "no".
//   max_steps:  edge extensions the search may examine (each partial cycle or
//               trail inspected costs at least one step).
//   max_length: longest walk the search may build. The defaults never bind at
//               desk scale; a binding cap turns an unsuccessful search into
//               BudgetExceeded, never into None.
struct SearchBudget {
  std::uint64_t max_steps = 10'000'000;
  int max_length = std::numeric_limits<int>::max();

  SearchBudget scaled(std::uint64_t factor) const {
    SearchBudget b = *this;
    b.max_steps *= factor;
    return b;
  }
};

enum class DetectStatus { Found, None, BudgetExceeded };

inline const char* detect_status_name(DetectStatus s) {
  switch (s) {
    case DetectStatus::Found: return "found";
    case DetectStatus::None: return "none";
    case DetectStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct DetectResult {
  DetectStatus status = DetectStatus::None;
  std::optional<Walk> witness;
  std::uint64_t steps = 0;
};

namespace detail {

// Strongly connected components (directed) or connected components
// (undirected); returns component index per vertex. Iterative Tarjan.
inline std::vector<int> components(const CostGraph& g) {
  int n = g.vertex_count();
  std::vector<int> comp((std::size_t)n, -1);
  if (!g.directed()) {
    int c = 0;
    for (VertexId s = 0; s < n; ++s) {
      if (comp[(std::size_t)s] >= 0) continue;
      std::vector<VertexId> stack{s};
      comp[(std::size_t)s] = c;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.out(v)) {
          VertexId t = g.opposite(e, v);
          if (comp[(std::size_t)t] < 0) {
            comp[(std::size_t)t] = c;
            stack.push_back(t);
          }
        }
      }
      ++c;
    }
    return comp;
  }
  std::vector<int> index((std::size_t)n, -1), low((std::size_t)n, 0);
  std::vector<char> on_stack((std::size_t)n, 0);
  std::vector<VertexId> stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    VertexId v;
    std::size_t ei;
  };
  for (VertexId root = 0; root < n; ++root) {
    if (index[(std::size_t)root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    index[(std::size_t)root] = low[(std::size_t)root] = next_index++;
    stack.push_back(root);
    on_stack[(std::size_t)root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& out = g.out(f.v);
      if (f.ei < out.size()) {
        VertexId w = g.edge(out[f.ei++]).head;
        if (index[(std::size_t)w] < 0) {
          index[(std::size_t)w] = low[(std::size_t)w] = next_index++;
          stack.push_back(w);
          on_stack[(std::size_t)w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[(std::size_t)w]) {
          low[(std::size_t)f.v] = std::min(low[(std::size_t)f.v], index[(std::size_t)w]);
        }
      } else {
        if (low[(std::size_t)f.v] == index[(std::size_t)f.v]) {
          for (;;) {
            VertexId w = stack.back();
            stack.pop_back();
            on_stack[(std::size_t)w] = 0;
            comp[(std::size_t)w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        VertexId child = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[(std::size_t)frames.back().v] =
              std::min(low[(std::size_t)frames.back().v], low[(std::size_t)child]);
      }
    }
  }
  return comp;
}

// Sum of negative edge costs inside each component. A component whose sum is
// zero provably contains no negative cycle or closed trail, and the sum also
// bounds how far any partial walk's cost can still drop.
inline std::vector<Rational> component_negative_sums(const CostGraph& g,
                                                     const std::vector<int>& comp) {
  int nc = 0;
  for (int c : comp) nc = std::max(nc, c + 1);
  std::vector<Rational> sums((std::size_t)nc, Rational(0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (comp[(std::size_t)ed.tail] != comp[(std::size_t)ed.head]) continue;
    if (ed.cost.is_negative()) sums[(std::size_t)comp[(std::size_t)ed.tail]] += ed.cost;
  }
  return sums;
}

// The edge's traversal target when standing at `from`; nullopt if the edge
// cannot be traversed from there.
inline std::optional<VertexId> edge_target(const CostGraph& g, EdgeId e, VertexId from) {
  const Edge& ed = g.edge(e);
  if (g.directed()) {
    if (ed.tail != from) return std::nullopt;
    return ed.head;
  }
  if (ed.tail == from) return ed.head;
  if (ed.head == from) return ed.tail;
  return std::nullopt;
}

// True when a lower-id unused parallel copy of e exists at `from` (same
// target, same cost). Parallel copies are interchangeable for feasibility,
// so the searches only ever take the lowest-id available one; any witness
// using other copies has an equivalent canonical representative.
inline bool shadowed_by_parallel_copy(const CostGraph& g, VertexId from, EdgeId e, VertexId to,
                                      const std::vector<char>& used) {
  for (EdgeId other : g.out(from)) {
    if (other >= e || used[(std::size_t)other]) continue;
    auto t = edge_target(g, other, from);
    if (t && *t == to && g.edge(other).cost == g.edge(e).cost) return true;
  }
  return false;
}

}  // namespace detail

// Exhaustive kLNCC decision: is there a simple cycle of length >= k with
// negative total cost? Enumerates elementary cycles by backtracking, each
// anchored at its minimum vertex id and confined to that vertex's strongly
// connected component; components without a negative edge are skipped and
// branches whose cost cannot reach below zero even with every remaining
// negative edge are cut. Both prunings discard only provably non-negative
// cycles, so a None answer is still certified by exhaustion.
//
// Returns the first qualifying cycle in DFS order (anchors ascending, edge
// ids ascending), which makes results deterministic for a fixed input and
// budget.
inline DetectResult detect_klncc_exact(const CostGraph& g, int k, SearchBudget budget = {}) {
  if (k < 2) raise(Errc::InvalidParameter, "k must be >= 2");
  DetectResult res;
  std::vector<int> comp = detail::components(g);
  std::vector<Rational> neg_sum = detail::component_negative_sums(g, comp);

  int n = g.vertex_count();
  std::vector<char> on_path((std::size_t)n, 0);
  std::vector<char> used((std::size_t)std::max(g.edge_count(), 1), 0);
  std::vector<EdgeId> path;
  bool truncated = false;
  bool out_of_steps = false;

  for (VertexId s = 0; s < n && !res.witness && !out_of_steps; ++s) {
    int c = comp[(std::size_t)s];
    if (!neg_sum[(std::size_t)c].is_negative()) continue;

    Rational cost(0), used_neg(0);
    auto dfs = [&](auto&& self, VertexId cur) -> bool {
      for (EdgeId e : g.out(cur)) {
        if (used[(std::size_t)e]) continue;
        auto target = detail::edge_target(g, e, cur);
        if (!target) continue;
        VertexId t = *target;
        if (t < s || comp[(std::size_t)t] != c) continue;
        if (detail::shadowed_by_parallel_copy(g, cur, e, t, used)) continue;
        if (++res.steps > budget.max_steps) {
          out_of_steps = true;
          return false;
        }
        const Rational& ec = g.edge(e).cost;
        if (t == s) {
          int len = (int)path.size() + 1;
          if (len >= k && (cost + ec).is_negative()) {
            Walk w;
            w.start = s;
            w.edges = path;
            w.edges.push_back(e);
            res.witness = std::move(w);
            return true;
          }
          continue;
        }
        if (on_path[(std::size_t)t]) continue;
        if ((int)path.size() + 1 >= budget.max_length) {
          truncated = true;
          continue;
        }
        Rational next_used_neg = used_neg + (ec.is_negative() ? ec : Rational(0));
        if (!(cost + ec + (neg_sum[(std::size_t)c] - next_used_neg)).is_negative()) continue;
        on_path[(std::size_t)t] = 1;
        used[(std::size_t)e] = 1;
        path.push_back(e);
        Rational save_cost = cost, save_neg = used_neg;
        cost += ec;
        used_neg = next_used_neg;
        bool hit = self(self, t);
        cost = save_cost;
        used_neg = save_neg;
        path.pop_back();
        used[(std::size_t)e] = 0;
        on_path[(std::size_t)t] = 0;
        if (hit || out_of_steps) return hit;
      }
      return false;
    };
    on_path[(std::size_t)s] = 1;
    dfs(dfs, s);
    on_path[(std::size_t)s] = 0;
  }

  if (res.witness) {
    res.status = DetectStatus::Found;
    std::string why;
    if (!verify_klncc_witness(g, *res.witness, k, &why))
      raise(Errc::NotAWitness, "internal: search produced an invalid cycle: " + why);
  } else if (out_of_steps || truncated) {
    res.status = DetectStatus::BudgetExceeded;
  } else {
    res.status = DetectStatus::None;
  }
  return res;
}

// The unit-cost special case: a cycle of length >= k exists iff the graph
// with every cost overwritten to -1 has a negative cycle of length >= k.
// The witness refers to the rewritten copy, whose edge ids coincide with the
// input's.
inline DetectResult detect_long_cycle(const CostGraph& g, int k, SearchBudget budget = {}) {
  return detect_klncc_exact(g.with_uniform_cost(Rational(-1)), k, budget);
}

// Exhaustive FPkLNCCT decision: is there a closed trail through p with
// negative total cost whose contained cycles (elementary cycles over the
// trail's edges; under NegativeOnly, just the negative-cost ones) all have
// length >= k?
//
// Depth-first over trails (edge-use set, no edge reuse), anchored at each
// closed trail's minimum vertex, so only anchors <= p matter. Edges leaving
// the anchor's strongly connected component are never taken: every edge of a
// closed trail lies on a cycle of it, hence inside one component. Under the
// All filter, an extension that would create a cycle shorter than k is cut
// immediately (the violation could never be undone by extending further).
inline DetectResult detect_fpklncct_exact(const CostGraph& g, VertexId p, int k,
                                          SearchBudget budget = {},
                                          CycleFilter filter = CycleFilter::All) {
  if (k < 2) raise(Errc::InvalidParameter, "k must be >= 2");
  g.require_vertex(p);
  DetectResult res;
  std::vector<int> comp = detail::components(g);
  std::vector<Rational> neg_sum = detail::component_negative_sums(g, comp);

  int n = g.vertex_count();
  std::vector<char> used((std::size_t)std::max(g.edge_count(), 1), 0);
  std::vector<EdgeId> path;
  bool truncated = false;
  bool out_of_steps = false;

  // Shortest traversal (edge count) from `from` to `to` over used edges.
  auto used_distance = [&](VertexId from, VertexId to) -> int {
    if (from == to) return 0;
    std::vector<int> dist((std::size_t)n, -1);
    std::queue<VertexId> q;
    dist[(std::size_t)from] = 0;
    q.push(from);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (EdgeId e : path) {
        if (!used[(std::size_t)e]) continue;
        auto t = detail::edge_target(g, e, v);
        if (!t || dist[(std::size_t)*t] >= 0) continue;
        dist[(std::size_t)*t] = dist[(std::size_t)v] + 1;
        if (*t == to) return dist[(std::size_t)*t];
        q.push(*t);
      }
    }
    return -1;
  };

  for (VertexId s = 0; s <= p && !res.witness && !out_of_steps; ++s) {
    int c = comp[(std::size_t)s];
    if (comp[(std::size_t)p] != c) continue;  // trail visits both s and p
    if (!neg_sum[(std::size_t)c].is_negative()) continue;

    Rational cost(0), used_neg(0);
    int p_visits = s == p ? 1 : 0;
    auto dfs = [&](auto&& self, VertexId cur) -> bool {
      for (EdgeId e : g.out(cur)) {
        if (used[(std::size_t)e]) continue;
        auto target = detail::edge_target(g, e, cur);
        if (!target) continue;
        VertexId t = *target;
        if (t < s || comp[(std::size_t)t] != c) continue;
        if (detail::shadowed_by_parallel_copy(g, cur, e, t, used)) continue;
        if (++res.steps > budget.max_steps) {
          out_of_steps = true;
          return false;
        }
        if ((int)path.size() + 1 > budget.max_length) {
          truncated = true;
          continue;
        }
        const Rational& ec = g.edge(e).cost;
        Rational next_used_neg = used_neg + (ec.is_negative() ? ec : Rational(0));
        if (!(cost + ec + (neg_sum[(std::size_t)c] - next_used_neg)).is_negative()) continue;
        if (filter == CycleFilter::All) {
          int back = used_distance(t, cur);
          if (back >= 0 && back + 1 < k) continue;  // would embed a short cycle
        }
        used[(std::size_t)e] = 1;
        path.push_back(e);
        Rational save_cost = cost, save_neg = used_neg;
        cost += ec;
        used_neg = next_used_neg;
        if (t == p) ++p_visits;

        bool hit = false;
        if (t == s && p_visits > 0 && cost.is_negative()) {
          Walk w;
          w.start = s;
          w.edges = path;
          if (verify_fpklncct_witness(g, w, p, k, filter)) {
            res.witness = std::move(w);
            hit = true;
          }
        }
        if (!hit) hit = self(self, t);

        if (t == p) --p_visits;
        cost = save_cost;
        used_neg = save_neg;
        path.pop_back();
        used[(std::size_t)e] = 0;
        if (hit || out_of_steps) return hit;
      }
      return false;
    };
    dfs(dfs, s);
  }

  if (res.witness) {
    res.status = DetectStatus::Found;
  } else if (out_of_steps || truncated) {
    res.status = DetectStatus::BudgetExceeded;
  } else {
    res.status = DetectStatus::None;
  }
  return res;
}

// Negative cycle detection with no length bound (the k = 2 case): O(V * E)
// Bellman-Ford relaxations from an implicit super-source, then a predecessor
// walk to extract a simple negative cycle. Directed graphs only.
inline std::optional<CycleWitness> bellman_ford_negative_cycle(const CostGraph& g) {
  if (!g.directed()) raise(Errc::InvalidParameter, "Bellman-Ford needs a directed graph");
  int n = g.vertex_count();
  if (n == 0 || g.edge_count() == 0) return std::nullopt;
  std::vector<Rational> dist((std::size_t)n, Rational(0));
  std::vector<EdgeId> pred((std::size_t)n, -1);
  VertexId touched = -1;
  for (int round = 0; round < n; ++round) {
    touched = -1;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      if (dist[(std::size_t)ed.tail] + ed.cost < dist[(std::size_t)ed.head]) {
        dist[(std::size_t)ed.head] = dist[(std::size_t)ed.tail] + ed.cost;
        pred[(std::size_t)ed.head] = e;
        touched = ed.head;
      }
    }
    if (touched < 0) return std::nullopt;  // fixpoint: no negative cycle
  }
  // A relaxation in round n proves a negative cycle: the predecessor chain
  // from the touched vertex reconstructs a walk of >= n edges, so it must
  // revisit a vertex; the revisited segment is the cycle.
  std::vector<int> pos((std::size_t)n, -1);
  std::vector<EdgeId> back;
  VertexId cur = touched;
  while (pos[(std::size_t)cur] < 0) {
    pos[(std::size_t)cur] = (int)back.size();
    EdgeId e = pred[(std::size_t)cur];
    if (e < 0) raise(Errc::NotAWitness, "internal: predecessor chain left the relaxed region");
    back.push_back(e);
    cur = g.edge(e).tail;
  }
  int first = pos[(std::size_t)cur];
  CycleWitness w;
  w.start = cur;
  for (int i = (int)back.size() - 1; i >= first; --i) w.edges.push_back(back[(std::size_t)i]);
  std::string why;
  if (!verify_klncc_witness(g, w, 2, &why))
    raise(Errc::NotAWitness, "internal: predecessor walk produced an invalid cycle: " + why);
  return w;
}

}  // namespace klncc
