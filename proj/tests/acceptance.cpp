// Release gate for the testbed. Runs the complete experiment suite twice at
// the default scale (1000 documents, 15 bridges, 128-dim embeddings, seed 42)
// and checks thirteen criteria, printing one PASS or FAIL line per criterion.
// Exits 0 only when every criterion holds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pivotbench/harness.hpp"
#include "pivotbench/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pivotbench;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return std::string(buf);
}

int g_failures = 0;

void gate(int index, const char* label, bool ok, const std::string& detail) {
  std::printf("[%s] C%-2d %-34s %s\n", ok ? "PASS" : "FAIL", index, label,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// ---------------------------------------------------------------------------
// Full suite runner

struct SuiteTimings {
  double vector_only_seconds = 0.0;
  double ablation_seconds = 0.0;
};

ExperimentResults run_everything(const CorpusConfig& corpus_cfg,
                                 const IngestOptions& ingest_cfg,
                                 SuiteTimings* timings) {
  const auto docs = generate_corpus(corpus_cfg);
  const auto queries = generate_queries(corpus_cfg);
  std::printf("  building indexes over %zu documents...\n", docs.size());
  const BuiltIndexes built = build_indexes(docs, ingest_cfg);

  ExperimentResults results;
  results.corpus = corpus_cfg;
  results.corpus.num_documents = docs.size();
  results.ingest = ingest_cfg;
  results.seed = corpus_cfg.seed;
  results.graph_stats = built.graph.stats();

  if (timings) {
    const auto t = Clock::now();
    const auto probe = run_variant(built, Variant::P1, queries);
    timings->vector_only_seconds = seconds_since(t);
    (void)probe;
  }

  std::printf("  ablation (7 variants x %zu queries)...\n", queries.size());
  const auto t_ablation = Clock::now();
  results.ablation = run_ablation(built, queries);
  if (timings) timings->ablation_seconds = seconds_since(t_ablation);

  const CorpusView view{entity_pools(),
                        bridge_pool_selection(corpus_cfg.bridge_count),
                        &built.graph};
  std::printf("  injection attack grid...\n");
  results.attack_grid =
      run_attack_grid(docs, built, view, ingest_cfg, corpus_cfg.seed);
  std::printf("  adaptive attack grid...\n");
  results.adaptive_grid =
      run_adaptive_grid(docs, built, view, ingest_cfg, corpus_cfg.seed);

  const auto adv100 = adversarial_subset(queries, 100);
  const auto adv_all = adversarial_subset(queries, queries.size());
  std::printf("  traversal sweep...\n");
  results.traversal = run_traversal_sweep(built, adv100);
  std::printf("  mislabel sweep...\n");
  results.mislabel = run_mislabel_sweep(built, adv_all, corpus_cfg.seed);
  std::printf("  connectivity sweep...\n");
  results.connectivity =
      run_connectivity_sweep(results.corpus, ingest_cfg, adv100);

  for (const auto& run : results.ablation) {
    if (run.variant == Variant::P3) {
      results.bridges =
          bridge_attribution(run.records, built.graph,
                             bridge_pool_selection(corpus_cfg.bridge_count));
    }
  }
  return results;
}

const std::vector<EvaluatedQuery>* find_run(const ExperimentResults& r,
                                            Variant v) {
  for (const auto& run : r.ablation) {
    if (run.variant == v) return &run.records;
  }
  return nullptr;
}

MetricsSummary quick_summary(const std::vector<EvaluatedQuery>& records) {
  SummaryOptions opts;
  opts.with_bootstrap = false;
  return summarize(records, opts);
}

// ---------------------------------------------------------------------------
// C1..C4: ablation behavior

void check_vector_only(const ExperimentResults& r, const SuiteTimings& t) {
  const auto* records = find_run(r, Variant::P1);
  const MetricsSummary s = quick_summary(*records);
  const bool ok = s.n == 500 && s.rpr == 0.0 && s.mean_leakage == 0.0 &&
                  s.leaking_queries == 0 && t.vector_only_seconds < 60.0;
  gate(1, "vector-only stays clean", ok,
       fmt("rpr=%.4f leaking=%zu/%zu in %.1fs", s.rpr, s.leaking_queries, s.n,
           t.vector_only_seconds));
}

void check_undefended_leaks(const ExperimentResults& r,
                            const SuiteTimings& t) {
  const auto* records = find_run(r, Variant::P3);
  const MetricsSummary benign =
      quick_summary(filter_by_kind(*records, QueryKind::Benign));
  const MetricsSummary adversarial =
      quick_summary(filter_by_kind(*records, QueryKind::Adversarial));
  const MetricsSummary all = quick_summary(*records);
  const bool ok = benign.rpr >= 0.85 && adversarial.rpr >= 0.85 &&
                  all.mean_leakage >= 5.0 && t.ablation_seconds < 600.0;
  gate(2, "undefended hybrid leaks", ok,
       fmt("benign rpr=%.3f adv rpr=%.3f mean leakage=%.2f ablation %.0fs",
           benign.rpr, adversarial.rpr, all.mean_leakage,
           t.ablation_seconds));
}

void check_pivot_depth(const ExperimentResults& r) {
  const auto* records = find_run(r, Variant::P3);
  std::size_t leaking = 0;
  bool all_two = true;
  for (const auto& record : *records) {
    const auto pd = pivot_depth(record.result, record.query.user);
    if (!pd.has_value()) continue;
    ++leaking;
    if (*pd != 2) all_two = false;
  }
  const MetricsSummary s = quick_summary(*records);
  const bool dist = s.pd_min && *s.pd_min == 2 && s.pd_median == 2.0 &&
                    s.pd_max && *s.pd_max == 2;
  gate(3, "pivot depth is exactly two", all_two && dist && leaking > 0,
       fmt("min/median/max = %d/%.1f/%d over %zu leaking queries",
           s.pd_min.value_or(-1), s.pd_median, s.pd_max.value_or(-1),
           leaking));
}

void check_defenses_hold(const ExperimentResults& r) {
  bool clean = true;
  std::size_t entity_items = 0;
  std::string worst;
  for (Variant v : {Variant::P4, Variant::P5, Variant::P6, Variant::P7,
                    Variant::P8}) {
    const auto* records = find_run(r, v);
    const MetricsSummary s = quick_summary(*records);
    if (s.n != 500 || s.rpr != 0.0 || s.mean_leakage != 0.0) {
      clean = false;
      if (worst.empty())
        worst = fmt("%s rpr=%.3f", variant_name(v).c_str(), s.rpr);
    }
    for (const auto& record : *records) {
      for (const auto& item : record.result.context) {
        if (item.kind == NodeKind::Entity) ++entity_items;
      }
    }
  }
  const bool ok = clean && entity_items == 0;
  gate(4, "defended variants stay clean", ok,
       ok ? std::string("P4..P8 rpr=0 leakage=0, entity items=0")
          : fmt("%s entity items=%zu", worst.c_str(), entity_items));
}

// ---------------------------------------------------------------------------
// C5..C6: attack grids

std::size_t expected_payload(AttackKind kind) {
  switch (kind) {
    case AttackKind::A1: return 9;
    case AttackKind::A2: return 10;
    case AttackKind::A3: return 20;
    case AttackKind::A4: return 15;
    default: return 10;
  }
}

void check_attack_grid(const ExperimentResults& r) {
  bool ok = r.attack_grid.size() == 16;
  std::string bad;
  for (const auto& cell : r.attack_grid) {
    const MetricsSummary s = quick_summary(cell.records);
    const double want = cell.variant == Variant::P3 ? 1.0 : 0.0;
    const bool cell_ok = s.n == 10 && s.rpr == want &&
                         cell.payload_docs == expected_payload(cell.kind);
    if (!cell_ok) {
      ok = false;
      if (bad.empty()) {
        bad = fmt("%s x %s rpr=%.2f payload=%zu",
                  attack_kind_name(cell.kind).c_str(),
                  variant_name(cell.variant).c_str(), s.rpr,
                  cell.payload_docs);
      }
    }
  }
  gate(5, "injection grid exact", ok,
       ok ? std::string("16 cells: 1.00 vs P3, 0.00 defended, payloads "
                        "9/10/20/15")
          : bad);
}

void check_adaptive_grid(const ExperimentResults& r) {
  bool ok = r.adaptive_grid.size() == 20;
  std::string bad;
  std::string forged;
  double a7_undefended = -1.0;
  for (const auto& cell : r.adaptive_grid) {
    const MetricsSummary s = quick_summary(cell.records);
    bool cell_ok = true;
    if (cell.variant != Variant::P3) {
      cell_ok = s.rpr == 0.0;
    } else if (cell.kind == AttackKind::A5 || cell.kind == AttackKind::A6) {
      cell_ok = s.rpr == 1.0;
    } else {
      a7_undefended = s.rpr;  // informational: no exact target for A7 vs P3
    }
    if (cell.kind == AttackKind::A5 && cell.variant == Variant::P3) {
      if (!forged.empty()) forged += "/";
      forged += std::to_string(cell.forged_nodes);
    }
    if (!cell_ok) {
      ok = false;
      if (bad.empty()) {
        bad = fmt("%s x %s rpr=%.2f", attack_kind_name(cell.kind).c_str(),
                  variant_name(cell.variant).c_str(), s.rpr);
      }
    }
  }
  gate(6, "adaptive grid exact", ok,
       ok ? fmt("A5/A6 1.00 vs P3, all 0.00 defended; forged=%s, A7 vs P3 "
                "rpr=%.2f",
                forged.c_str(), a7_undefended)
          : bad);
}

// ---------------------------------------------------------------------------
// C7..C9: sweeps

void check_traversal(const ExperimentResults& r) {
  bool ok = r.traversal.size() == 27;
  auto rpr_at = [&](int hops, std::size_t branching,
                    std::size_t total) -> double {
    for (const auto& p : r.traversal) {
      if (p.budget.max_hops == hops && p.budget.max_branching == branching &&
          p.budget.max_total == total) {
        return p.summary.rpr;
      }
    }
    return -1.0;
  };
  for (const auto& p : r.traversal) {
    if (p.budget.max_hops == 1 && p.summary.rpr != 0.0) ok = false;
    if (p.budget.max_total == 25 && p.summary.rpr != 0.0) ok = false;
  }
  for (int hops : {2, 3}) {
    for (std::size_t branching : {std::size_t(5), std::size_t(10),
                                  std::size_t(20)}) {
      const double r25 = rpr_at(hops, branching, 25);
      const double r50 = rpr_at(hops, branching, 50);
      const double r100 = rpr_at(hops, branching, 100);
      if (r25 < 0.0 || r25 > r50 || r50 > r100) ok = false;
    }
  }
  gate(7, "traversal budget sweep", ok,
       fmt("depth-1 and budget-25 clean; rpr(2,10,*)=%.2f/%.2f/%.2f "
           "non-decreasing",
           rpr_at(2, 10, 25), rpr_at(2, 10, 50), rpr_at(2, 10, 100)));
}

void check_mislabel(const ExperimentResults& r) {
  bool ok = r.mislabel.size() == 5;
  std::string counts;
  for (const auto& p : r.mislabel) {
    if (p.summary.rpr != 0.0) ok = false;
    if (!counts.empty()) counts += "/";
    counts += std::to_string(p.relabeled);
  }
  gate(8, "label-noise stress", ok,
       fmt("filtered pipeline rpr=0 at all rates (relabeled %s)",
           counts.c_str()));
}

void check_connectivity(const ExperimentResults& r) {
  bool ok = r.connectivity.size() == 6;
  std::vector<double> xs;
  std::vector<double> ys;
  double min_rpr = 1.0;
  for (const auto& p : r.connectivity) {
    xs.push_back(static_cast<double>(p.bridge_count));
    ys.push_back(p.summary.mean_leakage);
    min_rpr = std::min(min_rpr, p.summary.rpr);
    if (p.summary.rpr < 0.80) ok = false;
  }
  const double rho = xs.size() >= 2 ? spearman(xs, ys) : 0.0;
  if (rho < 0.9) ok = false;
  gate(9, "leakage grows with bridges", ok,
       fmt("spearman=%.3f min rpr=%.3f leakage %.2f..%.2f", rho, min_rpr,
           ys.empty() ? 0.0 : ys.front(), ys.empty() ? 0.0 : ys.back()));
}

// ---------------------------------------------------------------------------
// C10: context size ordering

void check_context_sizes(const ExperimentResults& r) {
  std::map<Variant, double> mc;
  for (const auto& run : r.ablation)
    mc[run.variant] = quick_summary(run.records).mean_context;
  const bool ordered = mc[Variant::P3] > mc[Variant::P4] &&
                       mc[Variant::P4] >= mc[Variant::P5] &&
                       mc[Variant::P5] > mc[Variant::P6] &&
                       mc[Variant::P6] >= mc[Variant::P7] &&
                       mc[Variant::P7] >= mc[Variant::P8];
  const bool bands = mc[Variant::P3] >= 90.0 && mc[Variant::P3] <= 130.0 &&
                     mc[Variant::P4] >= 3.0 * mc[Variant::P1];
  gate(10, "context sizes ordered", ordered && bands,
       fmt("P1=%.1f P3=%.1f P4=%.1f P5=%.1f P6=%.1f P7=%.1f P8=%.1f",
           mc[Variant::P1], mc[Variant::P3], mc[Variant::P4], mc[Variant::P5],
           mc[Variant::P6], mc[Variant::P7], mc[Variant::P8]));
}

// ---------------------------------------------------------------------------
// C11: metric oracle on a hand-labeled fixture

ContextItem fixture_item(std::string id, NodeKind kind, std::string tenant,
                         Tier tier, int hop) {
  ContextItem item;
  item.node_id = std::move(id);
  item.kind = kind;
  item.tenant = std::move(tenant);
  item.sensitivity = tier;
  item.hop_depth = hop;
  item.source = hop == 0 ? ItemSource::Vector : ItemSource::Graph;
  return item;
}

// Twenty queries for an INTERNAL-clearance user of tenant "acme": queries
// 0..7 leak (even ones a single cross-tenant chunk, odd ones an
// over-clearance pair), 8..19 are clean.
std::vector<EvaluatedQuery> oracle_fixture() {
  std::vector<EvaluatedQuery> out;
  for (std::size_t i = 0; i < 20; ++i) {
    EvaluatedQuery eq;
    eq.query.query_id = fmt("oracle_%02zu", i);
    eq.query.user = UserContext::make("acme", Tier::Internal);
    eq.result.query_id = eq.query.query_id;
    auto& ctx = eq.result.context;
    ctx.push_back(fixture_item("home_a", NodeKind::Chunk, "acme",
                               Tier::Public, 0));
    ctx.push_back(fixture_item("home_b", NodeKind::Chunk, "acme",
                               Tier::Internal, 0));
    if (i < 8 && i % 2 == 0) {
      ctx.push_back(fixture_item("foreign_int", NodeKind::Chunk, "globex",
                                 Tier::Internal, 2));
    } else if (i < 8) {
      ctx.push_back(fixture_item("home_restricted", NodeKind::Chunk, "acme",
                                 Tier::Restricted, 3));
      ctx.push_back(fixture_item("foreign_conf", NodeKind::Chunk, "globex",
                                 Tier::Confidential, 2));
    } else {
      ctx.push_back(fixture_item("ent::Shared", NodeKind::Entity, "",
                                 Tier::Public, 1));
    }
    out.push_back(std::move(eq));
  }
  return out;
}

void check_metric_oracle() {
  const auto fixture = oracle_fixture();

  // Brute-force recomputation straight from the leak definition.
  std::size_t leaking = 0;
  double leak_total = 0.0;
  double swl_total = 0.0;
  double ctx_total = 0.0;
  std::vector<int> depths;
  for (const auto& eq : fixture) {
    std::size_t leaks = 0;
    double weight = 0.0;
    std::optional<int> depth;
    for (const auto& item : eq.result.context) {
      if (item.kind != NodeKind::Chunk) continue;
      const int gap =
          tier_level(item.sensitivity) - tier_level(eq.query.user.clearance);
      bool leak = false;
      double w = 0.0;
      if (gap > 0) {
        leak = true;
        w = static_cast<double>(gap);
      } else if (!item.tenant.empty() &&
                 eq.query.user.allowed_tenants.count(item.tenant) == 0) {
        leak = true;
        w = 1.0;
      }
      if (!leak) continue;
      ++leaks;
      weight += w;
      if (!depth.has_value() || item.hop_depth < *depth)
        depth = item.hop_depth;
    }
    if (leaks > 0) ++leaking;
    leak_total += static_cast<double>(leaks);
    swl_total += weight;
    ctx_total += static_cast<double>(eq.result.context.size());
    if (depth.has_value()) depths.push_back(*depth);
  }
  const double n = static_cast<double>(fixture.size());
  const double ref_rpr = static_cast<double>(leaking) / n;
  const double ref_leakage = leak_total / n;
  const double ref_swl = swl_total / n;
  const double ref_context = ctx_total / n;
  std::sort(depths.begin(), depths.end());
  const double ref_median =
      depths.size() % 2 == 1
          ? depths[depths.size() / 2]
          : (depths[depths.size() / 2 - 1] + depths[depths.size() / 2]) / 2.0;

  const MetricsSummary s = quick_summary(fixture);
  bool ok = s.rpr == ref_rpr && s.mean_leakage == ref_leakage &&
            s.mean_swl == ref_swl && s.mean_context == ref_context &&
            s.leaking_queries == leaking && s.pd_min &&
            *s.pd_min == depths.front() && s.pd_max &&
            *s.pd_max == depths.back() && s.pd_median == ref_median;

  // The fixture was labeled by hand; pin the intended values too.
  ok = ok && ref_rpr == 0.4 && ref_leakage == 0.6 && ref_swl == 0.8 &&
       ref_median == 2.0 && depths.front() == 2 && depths.back() == 2;

  // Regularized amplification on a zero baseline, small relative tolerance
  // because the targets are quotients of decimal fractions.
  const std::array<std::pair<double, double>, 4> grid = {
      std::pair{0.01, 1600.0}, std::pair{0.05, 320.0}, std::pair{0.1, 160.0},
      std::pair{0.5, 32.0}};
  for (const auto& [eps, want] : grid) {
    const double got = amplification(16.0, 0.0, eps).stabilized;
    if (std::abs(got - want) / want > 1e-9) ok = false;
  }
  const double af_default = amplification(16.0, 0.0, 0.1).stabilized;
  if (std::abs(af_default - 160.0) > 1e-6) ok = false;

  gate(11, "metric oracle equivalence", ok,
       fmt("recompute matches on 20 queries; af grid 1600/320/160/32 "
           "(af(0.1)=%.1f)",
           af_default));
}

// ---------------------------------------------------------------------------
// C12: bootstrap determinism and coverage

void check_bootstrap() {
  std::vector<double> sample;
  for (std::size_t i = 0; i < 100; ++i)
    sample.push_back(static_cast<double>(i % 7));
  const ConfidenceInterval a = bootstrap_ci(sample, 2000, 7);
  const ConfidenceInterval b = bootstrap_ci(sample, 2000, 7);
  const bool deterministic = a.lo == b.lo && a.hi == b.hi;

  const int trials = 500;
  const std::size_t draws = 500;
  int covered = 0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_stream(42, "coverage::" + std::to_string(trial)));
    std::vector<double> values(draws);
    for (auto& v : values) v = rng.below(2) == 0 ? 0.0 : 1.0;
    const ConfidenceInterval ci =
        bootstrap_ci(values, 2000, 1000 + static_cast<std::uint64_t>(trial));
    if (ci.lo <= 0.5 && 0.5 <= ci.hi) ++covered;
  }
  const bool coverage = covered >= 465;  // 93% of 500 trials
  gate(12, "bootstrap determinism + coverage", deterministic && coverage,
       fmt("repeat run identical; 0.5 covered in %d/%d trials", covered,
           trials));
}

// ---------------------------------------------------------------------------
// C13: end-to-end determinism

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_determinism(const Json& report_a, const Json& report_b,
                       Clock::time_point t_start) {
  const fs::path base = fs::temp_directory_path() / "pivotbench_acceptance";
  fs::remove_all(base);
  const fs::path dir_a = base / "a";
  const fs::path dir_b = base / "b";
  write_json_report(report_a, dir_a.string());
  write_csv_reports(report_a, dir_a.string());
  write_json_report(report_b, dir_b.string());
  write_csv_reports(report_b, dir_b.string());

  // Latency files are wall-clock measurements and are exempt by design.
  const std::array<const char*, 11> files = {
      "headline.json",   "ablation.csv",  "ablation_internal.csv",
      "amplification.csv", "utility.csv", "attack_grid.csv",
      "adaptive.csv",    "traversal.csv", "mislabel.csv",
      "connectivity.csv", "bridges.csv"};
  bool identical = true;
  std::string first_diff;
  for (const char* name : files) {
    const std::string a = slurp(dir_a / name);
    const std::string b = slurp(dir_b / name);
    if (a.empty() || a != b) {
      identical = false;
      if (first_diff.empty()) first_diff = name;
    }
  }
  const double total = seconds_since(t_start);
  const bool in_time = total < 1800.0;
  gate(13, "reports byte-identical", identical && in_time,
       identical
           ? fmt("11 report files match across runs; total %.0fs", total)
           : fmt("first difference in %s; total %.0fs", first_diff.c_str(),
                 total));
}

}  // namespace

int main() {
  const auto t_start = Clock::now();
  std::printf("acceptance gate: 1000 documents, 15 bridges, dim 128, "
              "seed 42\n");
  const CorpusConfig corpus_cfg;
  const IngestOptions ingest_cfg;

  try {
    Json report_a;
    {
      SuiteTimings timings;
      std::printf("first full run:\n");
      const ExperimentResults one =
          run_everything(corpus_cfg, ingest_cfg, &timings);
      check_vector_only(one, timings);
      check_undefended_leaks(one, timings);
      check_pivot_depth(one);
      check_defenses_hold(one);
      check_attack_grid(one);
      check_adaptive_grid(one);
      check_traversal(one);
      check_mislabel(one);
      check_connectivity(one);
      check_context_sizes(one);
      report_a = build_report(one);
    }
    check_metric_oracle();
    check_bootstrap();

    std::printf("second full run:\n");
    Json report_b;
    {
      const ExperimentResults two =
          run_everything(corpus_cfg, ingest_cfg, nullptr);
      report_b = build_report(two);
    }
    check_determinism(report_a, report_b, t_start);
  } catch (const std::exception& e) {
    std::printf("[FAIL] gate aborted: %s\n", e.what());
    return 1;
  }

  std::printf("%d of 13 criteria passed\n", 13 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
