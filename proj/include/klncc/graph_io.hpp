#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "klncc/graph.hpp"

namespace klncc {

// Line-oriented graph text format:
//
//   mode simple|multi|undirected
//   v <id> [label]
//   e <tail> <head> <num>/<den>
//
// Vertex ids must be 0..N-1 in order; edge ids are assigned by file order.
// Blank lines and lines starting with '#' are ignored on input and never
// emitted, so emit/parse round-trips byte-identically.

inline void emit_graph_text(const CostGraph& g, std::ostream& os) {
  os << "mode " << mode_name(g.mode()) << "\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << "v " << v;
    if (!g.label(v).empty()) os << " " << g.label(v);
    os << "\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    os << "e " << ed.tail << " " << ed.head << " " << ed.cost.str() << "\n";
  }
}

inline std::string graph_to_text(const CostGraph& g) {
  std::ostringstream os;
  emit_graph_text(g, os);
  return os.str();
}

inline CostGraph parse_graph_text(std::istream& is) {
  std::string line;
  int lineno = 0;
  bool have_mode = false;
  GraphMode mode = GraphMode::SimpleDirected;
  CostGraph graph(mode);
  auto bad = [&](const std::string& msg) {
    raise(Errc::GraphFormat, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "mode") {
      if (have_mode) bad("duplicate mode line");
      std::string m;
      ls >> m;
      if (m == "simple")
        mode = GraphMode::SimpleDirected;
      else if (m == "multi")
        mode = GraphMode::Multigraph;
      else if (m == "undirected")
        mode = GraphMode::SimpleUndirected;
      else
        bad("unknown mode '" + m + "'");
      graph = CostGraph(mode);
      have_mode = true;
    } else if (kind == "v") {
      if (!have_mode) bad("vertex before mode line");
      int id = -1;
      if (!(ls >> id)) bad("bad vertex line");
      std::string lbl;
      ls >> lbl;
      if (id != graph.vertex_count()) bad("vertex ids must be 0..N-1 in order");
      graph.add_vertex(lbl);
    } else if (kind == "e") {
      if (!have_mode) bad("edge before mode line");
      int tail = -1, head = -1;
      std::string cost;
      if (!(ls >> tail >> head >> cost)) bad("bad edge line");
      graph.add_edge(tail, head, Rational::parse(cost));  // mode violations propagate
    } else {
      bad("unknown record '" + kind + "'");
    }
  }
  if (!have_mode) raise(Errc::GraphFormat, "missing mode line");
  return graph;
}

inline CostGraph graph_from_text(const std::string& text) {
  std::istringstream is(text);
  return parse_graph_text(is);
}

// DOT export for visualization; edge labels carry the exact cost.
inline void export_dot(const CostGraph& g, std::ostream& os) {
  bool dir = g.directed();
  os << (dir ? "digraph" : "graph") << " G {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << "  n" << v << " [label=\"" << (g.label(v).empty() ? std::to_string(v) : g.label(v))
       << "\"];\n";
  }
  const char* arrow = dir ? " -> " : " -- ";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    os << "  n" << ed.tail << arrow << "n" << ed.head << " [label=\"" << ed.cost.str()
       << "\"];\n";
  }
  os << "}\n";
}

// Witness file: one edge id per line, then a summary line
//   cost <num>/<den> length <L> start <vertex>
// The summary is recomputed on load and must match.

inline void emit_witness(const CostGraph& g, const Walk& w, std::ostream& os) {
  for (EdgeId e : w.edges) os << e << "\n";
  VertexId start = w.start;
  if (start < 0 && !w.edges.empty() && g.directed()) start = g.edge(w.edges.front()).tail;
  os << "cost " << walk_cost(g, w).str() << " length " << w.length() << " start " << start
     << "\n";
}

inline std::string witness_to_text(const CostGraph& g, const Walk& w) {
  std::ostringstream os;
  emit_witness(g, w, os);
  return os.str();
}

inline Walk parse_witness(const CostGraph& g, std::istream& is) {
  Walk w;
  std::string line;
  int lineno = 0;
  bool have_summary = false;
  Rational declared_cost;
  int declared_length = -1;
  auto bad = [&](const std::string& msg) {
    raise(Errc::WitnessFormat, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (line.rfind("cost", 0) == 0) {
      std::string kw1, costs, kw2, kw3;
      int len = -1;
      VertexId start = -1;
      if (!(ls >> kw1 >> costs >> kw2 >> len >> kw3 >> start) || kw2 != "length" ||
          kw3 != "start")
        bad("bad summary line");
      declared_cost = Rational::parse(costs);
      declared_length = len;
      w.start = start;
      have_summary = true;
    } else {
      EdgeId e = -1;
      if (!(ls >> e)) bad("expected edge id");
      if (have_summary) bad("edge id after summary line");
      w.edges.push_back(e);
    }
  }
  if (!have_summary) raise(Errc::WitnessFormat, "missing summary line");
  if (declared_length != w.length()) raise(Errc::WitnessFormat, "declared length mismatch");
  if (walk_cost(g, w) != declared_cost) raise(Errc::WitnessFormat, "declared cost mismatch");
  return w;
}

inline Walk witness_from_text(const CostGraph& g, const std::string& text) {
  std::istringstream is(text);
  return parse_witness(g, is);
}

}  // namespace klncc
