#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "klncc/graph_io.hpp"
#include "klncc/reduction.hpp"

namespace klncc {

// Provenance sidecar: everything besides the graph itself that witness
// translation needs, as JSON. Together with the graph text file this lets a
// separate process invocation decode a witness back to an assignment.

inline nlohmann::json artifact_provenance_json(const ReductionArtifact& art) {
  nlohmann::json j;
  j["kind"] = reduction_kind_name(art.kind);
  j["m"] = art.m;
  j["num_vars"] = art.num_vars;
  j["dimacs"] = dimacs_to_text(art.formula);
  j["fixed_point"] = art.fixed_point;
  j["closing_edge"] = art.closing_edge;
  j["chain_edges"] = art.chain_edges;
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [u, v] : art.clause_pairs) pairs.push_back({u, v});
  j["clause_pairs"] = pairs;
  nlohmann::json lobes = nlohmann::json::array();
  for (const auto& slots : art.lobes) {
    nlohmann::json ls = nlohmann::json::array();
    for (const LobeSlot& s : slots) {
      ls.push_back({{"entry", s.entry},
                    {"exit", s.exit},
                    {"path", s.lobe_path},
                    {"conn_in", s.conn_in},
                    {"conn_out", s.conn_out},
                    {"clause", s.clause},
                    {"positive", s.positive}});
    }
    lobes.push_back(ls);
  }
  j["lobes"] = lobes;
  if (!art.flips.empty()) j["flips"] = art.flips;
  return j;
}

inline ReductionArtifact artifact_from_parts(const CostGraph& graph, const nlohmann::json& j) {
  ReductionArtifact art;
  art.graph = graph;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "3sat-multi")
    art.kind = ReductionKind::ThreeSatMulti;
  else if (kind == "3o3sat-simple")
    art.kind = ReductionKind::ThreeO3SatSimple;
  else if (kind == "3o3sat-undirected")
    art.kind = ReductionKind::ThreeO3SatUndirected;
  else
    raise(Errc::SyntaxError, "unknown reduction kind '" + kind + "'");
  art.m = j.at("m").get<int>();
  art.num_vars = j.at("num_vars").get<int>();
  art.formula = dimacs_from_text(j.at("dimacs").get<std::string>());
  art.fixed_point = j.at("fixed_point").get<VertexId>();
  art.closing_edge = j.at("closing_edge").get<EdgeId>();
  art.chain_edges = j.at("chain_edges").get<std::vector<EdgeId>>();
  for (const auto& p : j.at("clause_pairs"))
    art.clause_pairs.emplace_back(p.at(0).get<VertexId>(), p.at(1).get<VertexId>());
  for (const auto& ls : j.at("lobes")) {
    std::vector<LobeSlot> slots;
    for (const auto& s : ls) {
      LobeSlot slot;
      slot.entry = s.at("entry").get<VertexId>();
      slot.exit = s.at("exit").get<VertexId>();
      slot.lobe_path = s.at("path").get<std::vector<EdgeId>>();
      slot.conn_in = s.at("conn_in").get<EdgeId>();
      slot.conn_out = s.at("conn_out").get<EdgeId>();
      slot.clause = s.at("clause").get<int>();
      slot.positive = s.at("positive").get<bool>();
      slots.push_back(std::move(slot));
    }
    art.lobes.push_back(std::move(slots));
  }
  if (j.contains("flips")) art.flips = j.at("flips").get<std::vector<bool>>();
  return art;
}

inline std::string provenance_path(const std::string& graph_path) {
  return graph_path + ".prov.json";
}

inline void write_artifact(const ReductionArtifact& art, const std::string& graph_path) {
  std::ofstream gf(graph_path);
  if (!gf) raise(Errc::InvalidParameter, "cannot write " + graph_path);
  emit_graph_text(art.graph, gf);
  std::ofstream pf(provenance_path(graph_path));
  if (!pf) raise(Errc::InvalidParameter, "cannot write " + provenance_path(graph_path));
  pf << artifact_provenance_json(art).dump(2) << "\n";
}

inline ReductionArtifact read_artifact(const std::string& graph_path) {
  std::ifstream gf(graph_path);
  if (!gf) raise(Errc::InvalidParameter, "cannot read " + graph_path);
  CostGraph g = parse_graph_text(gf);
  std::ifstream pf(provenance_path(graph_path));
  if (!pf) raise(Errc::InvalidParameter, "cannot read " + provenance_path(graph_path));
  nlohmann::json j;
  pf >> j;
  return artifact_from_parts(g, j);
}

}  // namespace klncc
