#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "klncc/detect.hpp"
#include "klncc/dimacs.hpp"
#include "klncc/dpll.hpp"
#include "klncc/graph_io.hpp"
#include "klncc/reduction.hpp"

namespace klncc {

// splitmix64; self-contained so streams are identical across platforms
// (std::uniform_int_distribution is not).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }
  int below(int n) { return (int)(next() % (std::uint64_t)n); }  // n > 0
  bool coin() { return below(2) == 1; }

 private:
  std::uint64_t state_;
};

namespace detail {

// Shared clause sampler. capacity == nullptr means unlimited occurrences
// (plain 3SAT); otherwise per-variable occurrence budgets are respected.
// When `planted` is set, each clause is made true under it by flipping one
// literal's polarity if the sampled polarities missed.
inline CnfFormula gen_formula(int n, int m, std::uint64_t seed, std::vector<int>* capacity,
                              const Assignment* planted) {
  if (n < 1 || m < 1) raise(Errc::InfeasibleParameters, "need n >= 1 and m >= 1");
  Rng rng(seed);
  int total_cap = capacity ? 3 * n : m * 3;
  if (capacity && total_cap < m)
    raise(Errc::InfeasibleParameters, "occurrence budget 3n < m, clauses cannot be filled");
  std::vector<Clause> clauses;
  for (int k = 0; k < m; ++k) {
    std::vector<int> avail;
    for (int v = 1; v <= n; ++v)
      if (!capacity || (*capacity)[(std::size_t)(v - 1)] > 0) avail.push_back(v);
    int reserve = m - k - 1;  // later clauses need one slot each
    int max_size = std::min({3, (int)avail.size(), capacity ? total_cap - reserve : 3});
    Clause c;
    int size = 1 + rng.below(max_size);
    for (int t = 0; t < size; ++t) {
      int idx = rng.below((int)avail.size());
      int var = avail[(std::size_t)idx];
      avail.erase(avail.begin() + idx);
      c.push_back(rng.coin() ? var : -var);
    }
    if (planted) {
      bool sat = false;
      for (Literal lit : c) sat = sat || literal_true(lit, *planted);
      if (!sat) {
        int var = std::abs(c[0]);
        c[0] = (*planted)[(std::size_t)(var - 1)] ? var : -var;
      }
    }
    for (Literal lit : c) {
      if (capacity) --(*capacity)[(std::size_t)(std::abs(lit) - 1)];
      --total_cap;
    }
    clauses.push_back(std::move(c));
  }
  return CnfFormula::create(n, std::move(clauses));
}

}  // namespace detail

// Random 3O3SAT instance: 1..3 distinct-variable literals per clause, each
// variable used at most 3 times across the formula. Deterministic per
// (n, m, seed).
inline CnfFormula gen_random_3o3sat(int n, int m, std::uint64_t seed) {
  std::vector<int> capacity((std::size_t)n, 3);
  return detail::gen_formula(n, m, seed, &capacity, nullptr);
}

// Random 3SAT instance (no occurrence cap).
inline CnfFormula gen_random_3sat(int n, int m, std::uint64_t seed) {
  return detail::gen_formula(n, m, seed, nullptr, nullptr);
}

struct PlantedInstance {
  CnfFormula formula;
  Assignment assignment;  // satisfies formula by construction
};

inline PlantedInstance gen_planted(int n, int m, std::uint64_t seed, bool occurrence_capped) {
  Rng rng(mix64(seed));
  Assignment a;
  for (int v = 0; v < n; ++v) a.push_back(rng.coin());
  PlantedInstance out;
  out.assignment = a;
  std::vector<int> capacity((std::size_t)n, 3);
  out.formula =
      detail::gen_formula(n, m, seed, occurrence_capped ? &capacity : nullptr, &a);
  return out;
}

// Random 3O3SAT instance guaranteed to contain at least one variable whose
// negative occurrences outnumber positive ones (i.e. normalization has work
// to do). Rejection sampling over seeds.
inline CnfFormula gen_random_3o3sat_with_case45(int n, int m, std::uint64_t seed) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    CnfFormula f = gen_random_3o3sat(n, m, mix64(seed + (std::uint64_t)attempt));
    auto prof = occurrence_profile(f);
    for (const auto& p : prof) {
      auto c = classify_occurrences(p);
      if (c == OccurrenceCase::Case4 || c == OccurrenceCase::Case5) return f;
    }
  }
  raise(Errc::InfeasibleParameters, "no Case 4/5 instance found for these parameters");
}

// Deliberate artifact corruptions for mutation-sensitivity checks.
enum class ArtifactMutation { None, FlipClosingCost, DropNegationEdge };

inline ReductionArtifact mutate_artifact(const ReductionArtifact& art, ArtifactMutation mut) {
  ReductionArtifact out = art;
  if (mut == ArtifactMutation::None) return out;
  const CostGraph& g = art.graph;
  EdgeId dropped = -1;
  if (mut == ArtifactMutation::DropNegationEdge) {
    for (const auto& slots : art.lobes) {
      for (const LobeSlot& s : slots) {
        if (!s.positive && !s.lobe_path.empty()) {
          dropped = s.lobe_path.front();
          break;
        }
      }
      if (dropped >= 0) break;
    }
    if (dropped < 0) return out;  // nothing to drop; corruption is a no-op
  }
  CostGraph mutated(g.mode());
  for (VertexId v = 0; v < g.vertex_count(); ++v) mutated.add_vertex(g.label(v));
  std::vector<EdgeId> remap((std::size_t)g.edge_count(), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e == dropped) continue;
    const Edge& ed = g.edge(e);
    Rational c = ed.cost;
    if (mut == ArtifactMutation::FlipClosingCost && e == art.closing_edge) c = -c;
    remap[(std::size_t)e] = mutated.add_edge(ed.tail, ed.head, c);
  }
  out.graph = std::move(mutated);
  auto map_id = [&](EdgeId e) { return e < 0 ? e : remap[(std::size_t)e]; };
  out.closing_edge = map_id(art.closing_edge);
  for (EdgeId& e : out.chain_edges) e = map_id(e);
  for (auto& slots : out.lobes) {
    for (LobeSlot& s : slots) {
      std::vector<EdgeId> path;
      for (EdgeId e : s.lobe_path)
        if (map_id(e) >= 0) path.push_back(map_id(e));
      s.lobe_path = std::move(path);
      s.conn_in = map_id(s.conn_in);
      s.conn_out = map_id(s.conn_out);
    }
  }
  return out;
}

struct RoundtripOptions {
  CycleFilter filter = CycleFilter::All;
  SubdivisionCostMode cost_mode = SubdivisionCostMode::Split;
  ArtifactMutation mutation = ArtifactMutation::None;
};

// One oracle-vs-detector comparison, with replay data. A trial "agrees" when
// DPLL feasibility matches detector feasibility; budget exhaustion is its own
// outcome, never counted as agreement or disagreement.
struct TrialRecord {
  std::uint64_t seed = 0;
  bool planted = false;
  bool oracle_sat = false;
  DetectStatus detector = DetectStatus::None;
  bool agree = false;
  bool budget_exceeded = false;
  bool encode_roundtrip_ok = true;   // encode -> verify -> decode -> evaluate
  bool detector_decode_ok = true;    // decode+evaluate of the detector's witness
  std::uint64_t steps = 0;
  std::string dimacs;
  std::string graph_text;    // filled on failure, for offline replay
  std::string witness_text;  // likewise
};

inline ReductionArtifact build_artifact(const CnfFormula& f, ReductionKind kind, int k,
                                        SubdivisionCostMode cost_mode) {
  switch (kind) {
    case ReductionKind::ThreeSatMulti:
      return reduce_3sat_multigraph(f);
    case ReductionKind::ThreeO3SatSimple: {
      NormalizeResult norm = normalize_occurrences(f);
      ReductionArtifact art = reduce_3o3sat_simple(norm.formula);
      art.flips = norm.flipped;
      return art;
    }
    case ReductionKind::ThreeO3SatUndirected: {
      NormalizeResult norm = normalize_occurrences(f);
      ReductionArtifact art = reduce_undirected(norm.formula, k, cost_mode);
      art.flips = norm.flipped;
      return art;
    }
  }
  raise(Errc::InvalidParameter, "unknown reduction kind");
}

inline TrialRecord roundtrip_check(const CnfFormula& f, ReductionKind kind, int k,
                                   SearchBudget budget, RoundtripOptions opts = {}) {
  TrialRecord rec;
  rec.dimacs = dimacs_to_text(f);
  auto oracle = dpll_solve(f);
  rec.oracle_sat = oracle.has_value();

  ReductionArtifact art = build_artifact(f, kind, k, opts.cost_mode);
  if (opts.mutation != ArtifactMutation::None) art = mutate_artifact(art, opts.mutation);

  DetectResult det;
  if (kind == ReductionKind::ThreeSatMulti)
    det = detect_fpklncct_exact(art.graph, art.fixed_point, k, budget, opts.filter);
  else
    det = detect_klncc_exact(art.graph, k, budget);
  rec.detector = det.status;
  rec.steps = det.steps;
  rec.budget_exceeded = det.status == DetectStatus::BudgetExceeded;
  rec.agree = !rec.budget_exceeded && rec.oracle_sat == (det.status == DetectStatus::Found);

  if (opts.mutation == ArtifactMutation::None) {
    if (rec.oracle_sat) {
      try {
        Assignment reduced_a = apply_flips(*oracle, art.flips);
        Walk enc = kind == ReductionKind::ThreeSatMulti ? encode_witness_trail(art, reduced_a)
                                                        : encode_witness_cycle(art, reduced_a);
        Assignment back = decode_assignment(art, enc, opts.filter);
        rec.encode_roundtrip_ok = evaluate(art.formula, back) &&
                                  evaluate(f, apply_flips(back, art.flips));
      } catch (const Error&) {
        rec.encode_roundtrip_ok = false;
      }
    }
    if (det.status == DetectStatus::Found) {
      try {
        Assignment back = decode_assignment(art, *det.witness, opts.filter);
        rec.detector_decode_ok = evaluate(art.formula, back);
      } catch (const Error&) {
        rec.detector_decode_ok = false;
      }
    }
  }

  bool failed = (!rec.budget_exceeded && !rec.agree) || !rec.encode_roundtrip_ok ||
                (!rec.budget_exceeded && kind != ReductionKind::ThreeO3SatUndirected &&
                 !rec.detector_decode_ok);
  if (failed) {
    rec.graph_text = graph_to_text(art.graph);
    if (det.witness) rec.witness_text = witness_to_text(art.graph, *det.witness);
  }
  return rec;
}

struct CampaignConfig {
  ReductionKind kind = ReductionKind::ThreeO3SatSimple;
  int k = 3;
  int trials = 100;
  std::uint64_t base_seed = 1;
  int max_vars = 8;
  int max_clauses = 10;
  bool plant_half = true;  // even-numbered trials get a planted assignment
  SearchBudget budget{};
  RoundtripOptions opts{};
};

struct CampaignReport {
  CampaignConfig config{};
  int trials = 0;
  int agreements = 0;
  int disagreements = 0;
  int budget_exceeded = 0;  // after the 10x retry
  int retried = 0;
  int planted = 0;
  int oracle_sat_count = 0;
  int roundtrip_failures = 0;  // encode/decode assertions that did not hold
  std::int64_t wall_ms = 0;    // informational; kept out of summary files
  std::vector<TrialRecord> failures;
};

// Runs seeded trials: generate an instance (planted on even trials so both
// directions of the equivalence get coverage), compare oracle and detector,
// retry once with a 10x budget on exhaustion. Trials are independent and
// per-trial deterministic.
inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.config = cfg;
  for (int i = 0; i < cfg.trials; ++i) {
    std::uint64_t trial_seed = mix64(cfg.base_seed + (std::uint64_t)i * 0x1000193ULL);
    Rng size_rng(mix64(trial_seed));
    int n = 1 + size_rng.below(cfg.max_vars);
    int cap = cfg.kind == ReductionKind::ThreeSatMulti ? cfg.max_clauses
                                                       : std::min(cfg.max_clauses, 3 * n);
    int m = 1 + size_rng.below(cap);
    bool plant = cfg.plant_half && i % 2 == 0;
    CnfFormula f =
        plant ? gen_planted(n, m, trial_seed, cfg.kind != ReductionKind::ThreeSatMulti).formula
        : cfg.kind == ReductionKind::ThreeSatMulti ? gen_random_3sat(n, m, trial_seed)
                                                   : gen_random_3o3sat(n, m, trial_seed);

    TrialRecord rec = roundtrip_check(f, cfg.kind, cfg.k, cfg.budget, cfg.opts);
    if (rec.budget_exceeded) {
      ++rep.retried;
      rec = roundtrip_check(f, cfg.kind, cfg.k, cfg.budget.scaled(10), cfg.opts);
    }
    rec.seed = trial_seed;
    rec.planted = plant;

    ++rep.trials;
    if (plant) ++rep.planted;
    if (rec.oracle_sat) ++rep.oracle_sat_count;
    if (rec.budget_exceeded)
      ++rep.budget_exceeded;
    else if (rec.agree)
      ++rep.agreements;
    else
      ++rep.disagreements;
    bool roundtrip_bad =
        !rec.encode_roundtrip_ok ||
        (cfg.kind != ReductionKind::ThreeO3SatUndirected && !rec.detector_decode_ok);
    if (roundtrip_bad) ++rep.roundtrip_failures;
    if ((!rec.budget_exceeded && !rec.agree) || rec.budget_exceeded || roundtrip_bad)
      rep.failures.push_back(rec);
  }
  rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

inline void print_campaign_lines(const CampaignReport& r, std::ostream& os) {
  os << "campaign kind " << reduction_kind_name(r.config.kind) << " k " << r.config.k << " seed "
     << r.config.base_seed << "\n";
  os << "trials " << r.trials << "\n";
  os << "agreements " << r.agreements << "\n";
  os << "disagreements " << r.disagreements << "\n";
  os << "budget_exceeded " << r.budget_exceeded << "\n";
  os << "retried " << r.retried << "\n";
  os << "planted " << r.planted << "\n";
  os << "oracle_sat " << r.oracle_sat_count << "\n";
  os << "roundtrip_failures " << r.roundtrip_failures << "\n";
  for (const TrialRecord& f : r.failures) {
    os << "failure seed " << f.seed << " oracle " << (f.oracle_sat ? "SAT" : "UNSAT")
       << " detector " << detect_status_name(f.detector) << " encode_ok "
       << f.encode_roundtrip_ok << " decode_ok " << f.detector_decode_ok << "\n";
  }
}

// Machine-readable summary. Deliberately excludes wall time so identical
// (inputs, seed, budget) produce byte-identical files.
inline nlohmann::json campaign_summary_json(const CampaignReport& r) {
  nlohmann::json j;
  j["kind"] = reduction_kind_name(r.config.kind);
  j["k"] = r.config.k;
  j["base_seed"] = r.config.base_seed;
  j["trials"] = r.trials;
  j["agreements"] = r.agreements;
  j["disagreements"] = r.disagreements;
  j["budget_exceeded"] = r.budget_exceeded;
  j["retried"] = r.retried;
  j["planted"] = r.planted;
  j["oracle_sat"] = r.oracle_sat_count;
  j["roundtrip_failures"] = r.roundtrip_failures;
  nlohmann::json fails = nlohmann::json::array();
  for (const TrialRecord& f : r.failures) {
    fails.push_back({{"seed", f.seed},
                     {"planted", f.planted},
                     {"oracle_sat", f.oracle_sat},
                     {"detector", detect_status_name(f.detector)},
                     {"encode_roundtrip_ok", f.encode_roundtrip_ok},
                     {"detector_decode_ok", f.detector_decode_ok},
                     {"dimacs", f.dimacs},
                     {"graph", f.graph_text},
                     {"witness", f.witness_text}});
  }
  j["failures"] = fails;
  return j;
}

// Exhaustive structural checks over one simple-digraph artifact:
//   (1) every u_h -> v_l path with h != l whose interior avoids the clause
//       vertices has cost >= m;
//   (2) with the closing edge removed, every path between clause vertices
//       has cost >= 0.
struct PropositionReport {
  std::uint64_t prop1_paths = 0;
  std::uint64_t prop2_paths = 0;
  struct Violation {
    int which = 0;  // 1 or 2
    std::vector<EdgeId> path;
    std::string cost;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline PropositionReport check_propositions(const ReductionArtifact& art,
                                            std::uint64_t max_paths = 5'000'000) {
  if (art.kind != ReductionKind::ThreeO3SatSimple)
    raise(Errc::InvalidParameter, "proposition checks need the simple-digraph artifact");
  const CostGraph& g = art.graph;
  PropositionReport rep;
  std::vector<char> in_u((std::size_t)g.vertex_count(), 0);
  for (auto [u, v] : art.clause_pairs) {
    in_u[(std::size_t)u] = 1;
    in_u[(std::size_t)v] = 1;
  }
  std::vector<char> is_v_of((std::size_t)g.vertex_count(), 0);
  std::vector<int> clause_of_v((std::size_t)g.vertex_count(), -1);
  for (int k = 0; k < art.m; ++k) {
    is_v_of[(std::size_t)art.clause_pairs[(std::size_t)k].second] = 1;
    clause_of_v[(std::size_t)art.clause_pairs[(std::size_t)k].second] = k;
  }
  std::uint64_t paths = 0;
  auto bump = [&] {
    if (++paths > max_paths)
      raise(Errc::EnumerationTooLarge, "more than " + std::to_string(max_paths) + " paths");
  };

  const Rational m_cost(art.m);
  std::vector<char> on_path((std::size_t)g.vertex_count(), 0);
  std::vector<EdgeId> path;

  // (1) from each u_h, interior confined to lobe vertices.
  for (int h = 0; h < art.m; ++h) {
    VertexId uh = art.clause_pairs[(std::size_t)h].first;
    Rational cost(0);
    auto dfs = [&](auto&& self, VertexId cur) -> void {
      for (EdgeId e : g.out(cur)) {
        const Edge& ed = g.edge(e);
        VertexId t = ed.head;
        if (on_path[(std::size_t)t]) continue;
        bump();
        if (in_u[(std::size_t)t]) {
          if (is_v_of[(std::size_t)t] && clause_of_v[(std::size_t)t] != h) {
            ++rep.prop1_paths;
            if (cost + ed.cost < m_cost) {
              PropositionReport::Violation viol;
              viol.which = 1;
              viol.path = path;
              viol.path.push_back(e);
              viol.cost = (cost + ed.cost).str();
              rep.violations.push_back(std::move(viol));
            }
          }
          continue;  // interior may not contain clause vertices
        }
        on_path[(std::size_t)t] = 1;
        path.push_back(e);
        Rational save = cost;
        cost += ed.cost;
        self(self, t);
        cost = save;
        path.pop_back();
        on_path[(std::size_t)t] = 0;
      }
    };
    on_path[(std::size_t)uh] = 1;
    dfs(dfs, uh);
    on_path[(std::size_t)uh] = 0;
  }

  // (2) all simple paths between clause vertices, closing edge removed.
  for (auto [u0, v0] : art.clause_pairs) {
    for (VertexId s : {u0, v0}) {
      Rational cost(0);
      auto dfs = [&](auto&& self, VertexId cur) -> void {
        for (EdgeId e : g.out(cur)) {
          if (e == art.closing_edge) continue;
          const Edge& ed = g.edge(e);
          VertexId t = ed.head;
          if (on_path[(std::size_t)t]) continue;
          bump();
          if (in_u[(std::size_t)t]) {
            ++rep.prop2_paths;
            if ((cost + ed.cost).is_negative()) {
              PropositionReport::Violation viol;
              viol.which = 2;
              viol.path = path;
              viol.path.push_back(e);
              viol.cost = (cost + ed.cost).str();
              rep.violations.push_back(std::move(viol));
            }
          }
          on_path[(std::size_t)t] = 1;
          path.push_back(e);
          Rational save = cost;
          cost += ed.cost;
          self(self, t);
          cost = save;
          path.pop_back();
          on_path[(std::size_t)t] = 0;
        }
      };
      on_path[(std::size_t)s] = 1;
      dfs(dfs, s);
      on_path[(std::size_t)s] = 0;
    }
  }
  return rep;
}

}  // namespace klncc
