// Command-line front end: reduce formulas to graphs, run the exact
// detectors, verify witnesses, solve/generate CNF, run oracle-equivalence
// campaigns, export DOT.
//
// Exit status: 0 found/SAT/agree, 1 none/UNSAT/invalid, 2 budget exceeded,
// 64 usage error, 65 malformed input or I/O failure, 70 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "klncc/klncc.hpp"
#include "klncc/reduction_io.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNone = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

klncc::CnfFormula load_cnf(const std::string& path) {
  std::ifstream in(path);
  if (!in) klncc::raise(klncc::Errc::InvalidParameter, "cannot read " + path);
  return klncc::parse_dimacs(in);
}

klncc::CostGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) klncc::raise(klncc::Errc::InvalidParameter, "cannot read " + path);
  return klncc::parse_graph_text(in);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) klncc::raise(klncc::Errc::InvalidParameter, "cannot write " + path);
  out << text;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("KLNCC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return (std::uint64_t)v;
    klncc::raise(klncc::Errc::InvalidParameter, "KLNCC_BUDGET must be a positive integer");
  }
  return klncc::SearchBudget{}.max_steps;
}

klncc::VertexId resolve_vertex(const klncc::CostGraph& g, const std::string& spec) {
  if (auto v = g.find_label(spec)) return *v;
  try {
    std::size_t used = 0;
    int id = std::stoi(spec, &used);
    if (used == spec.size() && g.has_vertex(id)) return id;
  } catch (const std::exception&) {
  }
  klncc::raise(klncc::Errc::VertexNotInGraph, "no vertex '" + spec + "'");
}

klncc::ReductionKind parse_kind(const std::string& kind) {
  if (kind == "3sat-multi") return klncc::ReductionKind::ThreeSatMulti;
  if (kind == "3o3sat") return klncc::ReductionKind::ThreeO3SatSimple;
  if (kind == "3o3sat-undirected") return klncc::ReductionKind::ThreeO3SatUndirected;
  klncc::raise(klncc::Errc::InvalidParameter, "unknown kind '" + kind + "'");
}

klncc::CycleFilter parse_filter(const std::string& f) {
  if (f == "all") return klncc::CycleFilter::All;
  if (f == "negative-only") return klncc::CycleFilter::NegativeOnly;
  klncc::raise(klncc::Errc::InvalidParameter, "unknown cycle filter '" + f + "'");
}

klncc::SubdivisionCostMode parse_cost_mode(const std::string& m) {
  if (m == "split") return klncc::SubdivisionCostMode::Split;
  if (m == "duplicate") return klncc::SubdivisionCostMode::Duplicate;
  klncc::raise(klncc::Errc::InvalidParameter, "unknown cost mode '" + m + "'");
}

int run(int argc, char** argv) {
  using namespace klncc;
  CLI::App app{"kLNCC / FPkLNCCT toolkit: SAT-to-negative-cycle reductions, exact detectors, "
               "witness verification and oracle-equivalence campaigns"};
  app.require_subcommand(1);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Build the auxiliary graph for a CNF formula");
  std::string r_kind = "3o3sat", r_cnf, r_out = "out.graph", r_cost_mode = "split";
  int r_k = 4;
  reduce->add_option("--kind", r_kind, "3sat-multi | 3o3sat | 3o3sat-undirected");
  reduce->add_option("--cnf", r_cnf, "input DIMACS file")->required();
  reduce->add_option("--out", r_out, "output graph file (provenance sidecar: <out>.prov.json)");
  reduce->add_option("--k", r_k, "cycle length bound (undirected kind needs k >= 4)");
  reduce->add_option("--corollary4-cost-mode", r_cost_mode,
                     "subdivided lobe edge costs: split | duplicate");

  // detect
  auto* detect = app.add_subcommand("detect", "Search a graph for a qualifying witness");
  std::string d_graph, d_fixed, d_filter = "all", d_out;
  int d_k = 3;
  std::uint64_t d_budget = 0;
  int d_max_len = 0;
  detect->add_option("--graph", d_graph, "graph file")->required();
  detect->add_option("--k", d_k, "minimum cycle length")->required();
  detect->add_option("--fixed-point", d_fixed,
                     "vertex label or id; selects the trail problem instead of the cycle one");
  detect->add_option("--budget", d_budget, "search step budget (default: KLNCC_BUDGET or 10M)");
  detect->add_option("--max-length", d_max_len, "walk length cap");
  detect->add_option("--cycle-filter", d_filter,
                     "which contained cycles must honor k: all | negative-only");
  detect->add_option("--out", d_out, "write the witness to this file");

  // solve-sat
  auto* solve = app.add_subcommand("solve-sat", "Decide a CNF formula with the DPLL oracle");
  std::string s_cnf;
  solve->add_option("--cnf", s_cnf, "input DIMACS file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Check a witness file against a graph");
  std::string v_graph, v_witness, v_fixed, v_filter = "all";
  int v_k = 3;
  verify->add_option("--graph", v_graph, "graph file")->required();
  verify->add_option("--witness", v_witness, "witness file")->required();
  verify->add_option("--k", v_k, "minimum cycle length")->required();
  verify->add_option("--fixed-point", v_fixed,
                     "vertex label or id; verifies as a trail witness instead of a cycle");
  verify->add_option("--cycle-filter", v_filter, "all | negative-only");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random CNF instance");
  int g_vars = 4, g_clauses = 3;
  std::uint64_t g_seed = 1;
  std::string g_kind = "3o3sat", g_out;
  bool g_plant = false, g_case45 = false;
  gen->add_option("--vars", g_vars, "variable count")->required();
  gen->add_option("--clauses", g_clauses, "clause count")->required();
  gen->add_option("--seed", g_seed, "rng seed")->required();
  gen->add_option("--kind", g_kind, "3o3sat | 3sat");
  gen->add_flag("--plant", g_plant, "plant a satisfying assignment");
  gen->add_flag("--require-case45", g_case45,
                "resample until some variable needs normalization (3o3sat only)");
  gen->add_option("--out", g_out, "output file (default stdout)");

  // roundtrip
  auto* rt = app.add_subcommand("roundtrip", "Oracle-vs-detector equivalence campaign");
  int t_trials = 100, t_k = 3, t_vars = 8, t_clauses = 10;
  std::uint64_t t_seed = 1, t_budget = 0;
  std::string t_kind = "3o3sat", t_filter = "all", t_cost_mode = "split", t_report,
              t_mutate = "none";
  rt->add_option("--trials", t_trials, "trial count")->required();
  rt->add_option("--k", t_k, "minimum cycle length")->required();
  rt->add_option("--kind", t_kind, "3sat-multi | 3o3sat | 3o3sat-undirected");
  rt->add_option("--seed", t_seed, "campaign seed");
  rt->add_option("--vars", t_vars, "max variables per instance");
  rt->add_option("--clauses", t_clauses, "max clauses per instance");
  rt->add_option("--budget", t_budget, "per-trial step budget");
  rt->add_option("--cycle-filter", t_filter, "all | negative-only");
  rt->add_option("--corollary4-cost-mode", t_cost_mode, "split | duplicate");
  rt->add_option("--mutate", t_mutate,
                 "artifact corruption: none | flip-closing | drop-negation");
  rt->add_option("--report", t_report, "write the machine-readable summary here");

  // export-dot
  auto* dot = app.add_subcommand("export-dot", "Write a graph as DOT");
  std::string x_graph, x_out;
  dot->add_option("--graph", x_graph, "graph file")->required();
  dot->add_option("--out", x_out, "output file (default stdout)");

  app.parse(argc, argv);

  if (reduce->parsed()) {
    CnfFormula f = load_cnf(r_cnf);
    ReductionKind kind = parse_kind(r_kind);
    ReductionArtifact art = build_artifact(f, kind, r_k, parse_cost_mode(r_cost_mode));
    write_artifact(art, r_out);
    std::cout << "reduced " << reduction_kind_name(kind) << " m " << art.m << " vertices "
              << art.graph.vertex_count() << " edges " << art.graph.edge_count() << " -> "
              << r_out << "\n";
    return kExitFound;
  }

  if (detect->parsed()) {
    CostGraph g = load_graph(d_graph);
    SearchBudget budget;
    budget.max_steps = d_budget > 0 ? d_budget : default_budget();
    if (d_max_len > 0) budget.max_length = d_max_len;
    CycleFilter filter = parse_filter(d_filter);
    DetectResult res;
    std::optional<VertexId> p;
    if (!d_fixed.empty()) p = resolve_vertex(g, d_fixed);
    res = p ? detect_fpklncct_exact(g, *p, d_k, budget, filter)
            : detect_klncc_exact(g, d_k, budget);
    if (res.status == DetectStatus::Found) {
      std::string why;
      bool ok = p ? verify_fpklncct_witness(g, *res.witness, *p, d_k, filter, &why)
                  : verify_klncc_witness(g, *res.witness, d_k, &why);
      if (!ok) {  // self-certification; must never happen
        std::cerr << "internal error: witness failed verification: " << why << "\n";
        return kExitInternal;
      }
      std::string text = witness_to_text(g, *res.witness);
      if (!d_out.empty())
        write_text(d_out, text);
      else
        std::cout << text;
      std::cout << "found cost " << walk_cost(g, *res.witness).str() << " length "
                << res.witness->length() << " steps " << res.steps << "\n";
      return kExitFound;
    }
    if (res.status == DetectStatus::BudgetExceeded) {
      std::cout << "budget exceeded after " << res.steps << " steps\n";
      return kExitBudget;
    }
    std::cout << "none (exhaustive, " << res.steps << " steps)\n";
    return kExitNone;
  }

  if (solve->parsed()) {
    CnfFormula f = load_cnf(s_cnf);
    auto a = dpll_solve(f);
    if (!a) {
      std::cout << "s UNSATISFIABLE\n";
      return kExitNone;
    }
    std::cout << "s SATISFIABLE\nv ";
    for (int v = 1; v <= f.num_vars; ++v)
      std::cout << ((*a)[(std::size_t)(v - 1)] ? v : -v) << " ";
    std::cout << "0\n";
    return kExitFound;
  }

  if (verify->parsed()) {
    CostGraph g = load_graph(v_graph);
    std::ifstream wf(v_witness);
    if (!wf) raise(Errc::InvalidParameter, "cannot read " + v_witness);
    Walk w = parse_witness(g, wf);
    std::string why;
    bool ok;
    if (!v_fixed.empty())
      ok = verify_fpklncct_witness(g, w, resolve_vertex(g, v_fixed), v_k, parse_filter(v_filter),
                                   &why);
    else
      ok = verify_klncc_witness(g, w, v_k, &why);
    if (ok) {
      std::cout << "valid cost " << walk_cost(g, w).str() << " length " << w.length() << "\n";
      return kExitFound;
    }
    std::cout << "invalid: " << why << "\n";
    return kExitNone;
  }

  if (gen->parsed()) {
    CnfFormula f = [&] {
      if (g_case45) return gen_random_3o3sat_with_case45(g_vars, g_clauses, g_seed);
      if (g_plant) return gen_planted(g_vars, g_clauses, g_seed, g_kind == "3o3sat").formula;
      if (g_kind == "3sat") return gen_random_3sat(g_vars, g_clauses, g_seed);
      if (g_kind == "3o3sat") return gen_random_3o3sat(g_vars, g_clauses, g_seed);
      raise(Errc::InvalidParameter, "unknown kind '" + g_kind + "'");
    }();
    std::string text = dimacs_to_text(f);
    if (!g_out.empty())
      write_text(g_out, text);
    else
      std::cout << text;
    return kExitFound;
  }

  if (rt->parsed()) {
    CampaignConfig cfg;
    cfg.kind = parse_kind(t_kind);
    cfg.k = t_k;
    cfg.trials = t_trials;
    cfg.base_seed = t_seed;
    cfg.max_vars = t_vars;
    cfg.max_clauses = t_clauses;
    cfg.budget.max_steps = t_budget > 0 ? t_budget : default_budget();
    cfg.opts.filter = parse_filter(t_filter);
    cfg.opts.cost_mode = parse_cost_mode(t_cost_mode);
    if (t_mutate == "flip-closing")
      cfg.opts.mutation = ArtifactMutation::FlipClosingCost;
    else if (t_mutate == "drop-negation")
      cfg.opts.mutation = ArtifactMutation::DropNegationEdge;
    else if (t_mutate != "none")
      raise(Errc::InvalidParameter, "unknown mutation '" + t_mutate + "'");
    CampaignReport rep = run_campaign(cfg);
    print_campaign_lines(rep, std::cout);
    std::cout << "wall_ms " << rep.wall_ms << "\n";
    if (!t_report.empty()) write_text(t_report, campaign_summary_json(rep).dump(2) + "\n");
    if (rep.budget_exceeded > 0) return kExitBudget;
    return rep.disagreements == 0 && rep.roundtrip_failures == 0 ? kExitFound : kExitNone;
  }

  if (dot->parsed()) {
    CostGraph g = load_graph(x_graph);
    std::ostringstream os;
    export_dot(g, os);
    if (!x_out.empty())
      write_text(x_out, os.str());
    else
      std::cout << os.str();
    return kExitFound;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const klncc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == klncc::Errc::InfeasibleParameters ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
