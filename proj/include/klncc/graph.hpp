#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "klncc/error.hpp"
#include "klncc/rational.hpp"

namespace klncc {

using VertexId = int;
using EdgeId = int;

enum class GraphMode { SimpleDirected, Multigraph, SimpleUndirected };

inline const char* mode_name(GraphMode m) {
  switch (m) {
    case GraphMode::SimpleDirected: return "simple";
    case GraphMode::Multigraph: return "multi";
    case GraphMode::SimpleUndirected: return "undirected";
  }
  return "?";
}

struct Edge {
  VertexId tail = -1;
  VertexId head = -1;
  Rational cost;
};

// Directed (multi)graph with exact edge costs and unit edge lengths.
// Immutable once built (the builders below are the only mutation surface),
// so all query functions are safe to call concurrently.
//
//  - simple mode: at most one edge per ordered (tail, head) pair;
//    anti-parallel pairs are allowed.
//  - multi mode: parallel duplicates allowed, each with its own id.
//  - undirected mode: each edge is traversable both ways but is a single id;
//    at most one edge per unordered vertex pair.
//
// Self-loops are rejected in every mode: no construction in this toolkit
// produces one and a unit-length loop would be a length-1 cycle, which the
// witness semantics below never admit.
class CostGraph {
 public:
  explicit CostGraph(GraphMode mode) : mode_(mode) {}

  GraphMode mode() const { return mode_; }
  bool directed() const { return mode_ != GraphMode::SimpleUndirected; }

  VertexId add_vertex(std::string label = {}) {
    labels_.push_back(std::move(label));
    out_.emplace_back();
    return (VertexId)labels_.size() - 1;
  }

  EdgeId add_edge(VertexId tail, VertexId head, Rational cost) {
    if (!has_vertex(tail) || !has_vertex(head))
      raise(Errc::DanglingEndpoint,
            "edge (" + std::to_string(tail) + "," + std::to_string(head) + ")");
    if (tail == head) raise(Errc::SelfLoop, "at vertex " + std::to_string(tail));
    if (mode_ != GraphMode::Multigraph) {
      auto key = pair_key(tail, head);
      if (!pairs_.insert(key).second)
        raise(Errc::DuplicateEdgeInSimpleMode,
              "edge (" + std::to_string(tail) + "," + std::to_string(head) + ")");
    }
    EdgeId id = (EdgeId)edges_.size();
    edges_.push_back(Edge{tail, head, cost});
    out_[tail].push_back(id);
    if (!directed()) out_[head].push_back(id);
    return id;
  }

  int vertex_count() const { return (int)labels_.size(); }
  int edge_count() const { return (int)edges_.size(); }

  bool has_vertex(VertexId v) const { return v >= 0 && v < vertex_count(); }
  bool has_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

  const Edge& edge(EdgeId e) const {
    if (!has_edge(e)) raise(Errc::EdgeNotInGraph, "edge id " + std::to_string(e));
    return edges_[e];
  }

  const std::string& label(VertexId v) const {
    require_vertex(v);
    return labels_[v];
  }

  std::optional<VertexId> find_label(std::string_view name) const {
    for (VertexId v = 0; v < vertex_count(); ++v)
      if (labels_[v] == name) return v;
    return std::nullopt;
  }

  // Edges leaving v; in undirected mode, all edges incident to v.
  const std::vector<EdgeId>& out(VertexId v) const {
    require_vertex(v);
    return out_[v];
  }

  // The endpoint of e that is not v. Requires v to be an endpoint.
  VertexId opposite(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    if (ed.tail == v) return ed.head;
    if (ed.head == v) return ed.tail;
    raise(Errc::DisconnectedWalk,
          "vertex " + std::to_string(v) + " is not an endpoint of edge " + std::to_string(e));
  }

  void require_vertex(VertexId v) const {
    if (!has_vertex(v)) raise(Errc::VertexNotInGraph, "vertex id " + std::to_string(v));
  }

  // Same graph with every edge cost replaced.
  CostGraph with_uniform_cost(Rational c) const {
    CostGraph g(mode_);
    g.labels_ = labels_;
    g.out_.resize(labels_.size());
    for (const Edge& e : edges_) {
      EdgeId id = (EdgeId)g.edges_.size();
      g.edges_.push_back(Edge{e.tail, e.head, c});
      g.out_[e.tail].push_back(id);
      if (!g.directed()) g.out_[e.head].push_back(id);
    }
    return g;
  }

 private:
  std::pair<int, int> pair_key(VertexId a, VertexId b) const {
    if (directed()) return {a, b};
    return {std::min(a, b), std::max(a, b)};
  }

  GraphMode mode_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::set<std::pair<int, int>> pairs_;  // simple-mode duplicate detection
};

// A walk is an ordered edge-id sequence. `start` pins the first vertex; it is
// required in undirected graphs (where an edge alone does not fix the
// traversal direction) and optional in directed ones. Vertex sequence, cost
// and length are derived, never stored.
struct Walk {
  VertexId start = -1;
  std::vector<EdgeId> edges;

  int length() const { return (int)edges.size(); }
};

// A trail is a walk with no repeated edge id; a cycle witness is a closed
// trail whose intermediate vertices are pairwise distinct. Both use the Walk
// representation; the verifiers below enforce the stronger invariants.
using TrailWitness = Walk;
using CycleWitness = Walk;

// Vertex sequence of the walk (size = length + 1 for nonempty walks).
// Throws DisconnectedWalk when consecutive edges do not chain, and
// EdgeNotInGraph for unknown edge ids.
inline std::vector<VertexId> walk_vertices(const CostGraph& g, const Walk& w) {
  std::vector<VertexId> seq;
  if (w.edges.empty()) {
    if (w.start >= 0) {
      g.require_vertex(w.start);
      seq.push_back(w.start);
    }
    return seq;
  }
  VertexId cur;
  if (g.directed()) {
    cur = g.edge(w.edges.front()).tail;
    if (w.start >= 0 && w.start != cur)
      raise(Errc::DisconnectedWalk, "declared start does not match first edge tail");
  } else {
    if (w.start < 0)
      raise(Errc::DisconnectedWalk, "undirected walk needs an explicit start vertex");
    g.require_vertex(w.start);
    cur = w.start;
  }
  seq.push_back(cur);
  for (EdgeId e : w.edges) {
    const Edge& ed = g.edge(e);
    if (g.directed()) {
      if (ed.tail != cur)
        raise(Errc::DisconnectedWalk, "edge " + std::to_string(e) + " does not continue the walk");
      cur = ed.head;
    } else {
      cur = g.opposite(e, cur);  // throws DisconnectedWalk if cur is not an endpoint
    }
    seq.push_back(cur);
  }
  return seq;
}

// Exact total cost; the empty walk costs 0/1.
inline Rational walk_cost(const CostGraph& g, const Walk& w) {
  (void)walk_vertices(g, w);  // validates connectivity
  Rational total;
  for (EdgeId e : w.edges) total += g.edge(e).cost;
  return total;
}

inline bool is_trail(const Walk& w) {
  std::vector<EdgeId> ids = w.edges;
  std::sort(ids.begin(), ids.end());
  return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
}

// Every contiguous closed subwalk of the trail whose intermediate vertices
// are pairwise distinct, one result per occurrence. A simple path yields
// nothing; a closed simple trail yields (at least) itself.
inline std::vector<CycleWitness> cycles_in_trail(const CostGraph& g, const TrailWitness& trail) {
  std::vector<CycleWitness> found;
  std::vector<VertexId> seq = walk_vertices(g, trail);
  int n = (int)seq.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (seq[i] != seq[j]) continue;
      bool simple = true;
      for (int a = i + 1; a < j && simple; ++a) {
        if (seq[a] == seq[i]) simple = false;
        for (int b = a + 1; b < j && simple; ++b)
          if (seq[a] == seq[b]) simple = false;
      }
      if (!simple) continue;
      CycleWitness c;
      c.start = seq[i];
      c.edges.assign(trail.edges.begin() + i, trail.edges.begin() + j);
      found.push_back(std::move(c));
    }
  }
  return found;
}

namespace detail {

inline bool fail(std::string* why, const char* reason) {
  if (why) *why = reason;
  return false;
}

// All elementary cycles of the sub(multi)graph spanned by the given edge ids,
// reported as edge-id sequences. Intended for small edge sets (a trail's
// edges); enumeration is anchored at each cycle's minimum vertex so every
// cycle appears exactly once up to choice of parallel copies.
inline std::vector<Walk> subgraph_elementary_cycles(const CostGraph& g,
                                                    const std::vector<EdgeId>& edge_ids) {
  std::vector<Walk> cycles;
  std::vector<VertexId> verts;
  for (EdgeId e : edge_ids) {
    verts.push_back(g.edge(e).tail);
    verts.push_back(g.edge(e).head);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  std::vector<char> used((std::size_t)g.edge_count() ? (std::size_t)g.edge_count() : 1, 0);
  std::vector<char> on_path(verts.empty() ? 1 : (std::size_t)(verts.back() + 1), 0);

  std::vector<EdgeId> path;
  // Recursive lambda over simple paths within the subgraph, vertices >= anchor.
  auto dfs = [&](auto&& self, VertexId anchor, VertexId cur) -> void {
    for (EdgeId e : edge_ids) {
      if (used[(std::size_t)e]) continue;
      const Edge& ed = g.edge(e);
      VertexId to;
      if (g.directed()) {
        if (ed.tail != cur) continue;
        to = ed.head;
      } else {
        if (ed.tail == cur)
          to = ed.head;
        else if (ed.head == cur)
          to = ed.tail;
        else
          continue;
      }
      if (to == anchor) {
        Walk c;
        c.start = anchor;
        c.edges = path;
        c.edges.push_back(e);
        cycles.push_back(std::move(c));
        continue;
      }
      if (to < anchor || on_path[(std::size_t)to]) continue;
      used[(std::size_t)e] = 1;
      on_path[(std::size_t)to] = 1;
      path.push_back(e);
      self(self, anchor, to);
      path.pop_back();
      on_path[(std::size_t)to] = 0;
      used[(std::size_t)e] = 0;
    }
  };

  for (VertexId s : verts) {
    on_path[(std::size_t)s] = 1;
    dfs(dfs, s, s);
    on_path[(std::size_t)s] = 0;
  }
  return cycles;
}

}  // namespace detail

// Cycle-length constraint applied to the cycles contained in a trail: either
// every cycle must reach the length bound, or only the negative-cost ones.
enum class CycleFilter { All, NegativeOnly };

// True iff `cycle` is a simple cycle of g (closed trail, intermediate
// vertices pairwise distinct) with length >= k and cost < 0.
// Throws EdgeNotInGraph for unknown edge ids; structural shortfalls yield
// false with a reason.
inline bool verify_klncc_witness(const CostGraph& g, const CycleWitness& cycle, int k,
                                 std::string* why = nullptr) {
  if (k < 2) raise(Errc::InvalidParameter, "k must be >= 2");
  for (EdgeId e : cycle.edges) (void)g.edge(e);  // EdgeNotInGraph on bad ids
  if (cycle.edges.empty()) return detail::fail(why, "empty edge sequence");
  if (!is_trail(cycle)) return detail::fail(why, "edge id repeated");
  std::vector<VertexId> seq;
  try {
    seq = walk_vertices(g, cycle);
  } catch (const Error&) {
    return detail::fail(why, "edges do not form a connected walk");
  }
  if (seq.front() != seq.back()) return detail::fail(why, "not closed");
  std::vector<VertexId> inner(seq.begin(), seq.end() - 1);
  std::sort(inner.begin(), inner.end());
  if (std::adjacent_find(inner.begin(), inner.end()) != inner.end())
    return detail::fail(why, "vertex repeated (not a simple cycle)");
  if (cycle.length() < k) return detail::fail(why, "length below k");
  if (!walk_cost(g, cycle).is_negative()) return detail::fail(why, "cost not negative");
  return true;
}

// True iff `trail` is a closed trail of g through p with cost < 0 whose
// contained cycles all have length >= k.
//
// Closedness is required: an open walk that merely touches p and happens to
// sum negative certifies nothing (it contains no cycle at all), and the
// encode/decode correspondence only holds for closed trails.
//
// "Contained cycle" means any elementary cycle formed by edges of the trail,
// not only contiguous subwalks. The contiguous cycles are a subset of these,
// so this check is the stricter of the two readings; it is the one under
// which detection on reduced instances agrees with the SAT oracle (a trail
// that crosses a lobe in both directions at separated positions hides a
// 2-cycle from the contiguous reading but not from this one).
inline bool verify_fpklncct_witness(const CostGraph& g, const TrailWitness& trail, VertexId p,
                                    int k, CycleFilter filter = CycleFilter::All,
                                    std::string* why = nullptr) {
  if (k < 2) raise(Errc::InvalidParameter, "k must be >= 2");
  g.require_vertex(p);
  for (EdgeId e : trail.edges) (void)g.edge(e);
  if (trail.edges.empty()) return detail::fail(why, "empty edge sequence");
  if (!is_trail(trail)) return detail::fail(why, "edge id repeated");
  std::vector<VertexId> seq;
  try {
    seq = walk_vertices(g, trail);
  } catch (const Error&) {
    return detail::fail(why, "edges do not form a connected walk");
  }
  if (seq.front() != seq.back()) return detail::fail(why, "not closed");
  if (std::find(seq.begin(), seq.end(), p) == seq.end())
    return detail::fail(why, "does not visit the fixed point");
  if (!walk_cost(g, trail).is_negative()) return detail::fail(why, "cost not negative");
  for (const Walk& c : detail::subgraph_elementary_cycles(g, trail.edges)) {
    if (filter == CycleFilter::NegativeOnly && !walk_cost(g, c).is_negative()) continue;
    if (c.length() < k) return detail::fail(why, "contains a cycle shorter than k");
  }
  return true;
}

}  // namespace klncc
