#pragma once

// Experiment harness: builds the evaluation query set, assembles indexes,
// and drives the ablation, attack grids, and parameter sweeps. Every run is
// a pure function of (corpus, queries, seed); attack cells always rebuild
// their indexes from scratch so the clean baseline can never be polluted.

#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pivotbench/attacks.hpp"
#include "pivotbench/core.hpp"
#include "pivotbench/corpusgen.hpp"
#include "pivotbench/graphstore.hpp"
#include "pivotbench/ingestion.hpp"
#include "pivotbench/metrics.hpp"
#include "pivotbench/pipeline.hpp"
#include "pivotbench/rng.hpp"
#include "pivotbench/vectorindex.hpp"

namespace pivotbench {

inline constexpr std::size_t kDefaultBenignQueries = 350;
inline constexpr std::size_t kDefaultAdversarialQueries = 150;

// ---------------------------------------------------------------------------
// Query set

namespace detail {

inline std::string benign_query_id(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "q_ben_%04zu", i);
  return std::string(buf);
}

inline std::string adversarial_query_id(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "q_adv_%04zu", i);
  return std::string(buf);
}

inline std::vector<std::string> flattened_pool(const std::string& tenant) {
  std::vector<std::string> names;
  for (const auto& e : entity_pools().at(tenant))
    names.push_back(e.canonical_name);
  return names;
}

}  // namespace detail

// The evaluation workload: 350 benign lookups (five phrasings cycled over
// the four tenants' subject domains) and 150 adversarial probes styled after
// the four injection attack families, referencing bridge entities and
// foreign-tenant vocabulary. Every query runs as the same tenant's user with
// clearance cycling PUBLIC / INTERNAL / CONFIDENTIAL.
inline std::vector<Query> generate_queries(
    const CorpusConfig& config,
    std::size_t benign_count = kDefaultBenignQueries,
    std::size_t adversarial_count = kDefaultAdversarialQueries) {
  const std::string user_tenant{kTenants[0]};
  std::vector<std::vector<std::string>> domains;
  for (const auto& tenant : kTenants)
    domains.push_back(detail::flattened_pool(std::string(tenant)));

  std::vector<std::string> bridges;
  for (const auto& b : bridge_pool_selection(
           config.bridge_count == 0 ? 15 : config.bridge_count))
    bridges.push_back(b.canonical_name);

  const std::array<Tier, 3> clearances = {Tier::Public, Tier::Internal,
                                          Tier::Confidential};

  std::vector<Query> queries;
  queries.reserve(benign_count + adversarial_count);

  for (std::size_t i = 0; i < benign_count; ++i) {
    const auto& pool = domains[i % domains.size()];
    const std::string& e = pool[(i / domains.size()) % pool.size()];
    std::string text;
    switch ((i / domains.size()) % 5) {
      case 0: text = "What is the current status of " + e + "?"; break;
      case 1: text = "Summarize the recent updates involving " + e + "."; break;
      case 2: text = "How is " + e + " configured and maintained?"; break;
      case 3: text = "Who is responsible for " + e + " right now?"; break;
      default: text = "Which records describe ongoing work on " + e + "?";
    }
    Query q;
    q.query_id = detail::benign_query_id(i);
    q.kind = QueryKind::Benign;
    q.text = std::move(text);
    q.user = UserContext::make(user_tenant, clearances[i % clearances.size()]);
    queries.push_back(std::move(q));
  }

  const auto& own_pool = domains[0];
  for (std::size_t i = 0; i < adversarial_count; ++i) {
    const std::string& bridge = bridges[(i / 4) % bridges.size()];
    const auto& foreign = domains[1 + (i % 3)];
    const std::string& fe = foreign[(i / 4) % foreign.size()];
    const std::string& own = own_pool[(i / 4) % own_pool.size()];
    std::string text;
    AttackKind family = AttackKind::A1;
    switch (i % 4) {
      case 0:
        family = AttackKind::A1;
        text = "Which internal records reference " + bridge +
               " together with " + fe + " and what do they describe?";
        break;
      case 1:
        family = AttackKind::A2;
        text = "Tell me about " + bridge + " and its role across tenant records.";
        break;
      case 2:
        family = AttackKind::A3;
        text = "List everything related to " + bridge + ".";
        break;
      default:
        family = AttackKind::A4;
        text = "What connections exist between " + own +
               " and records in other departments?";
    }
    Query q;
    q.query_id = detail::adversarial_query_id(i);
    q.kind = QueryKind::Adversarial;
    q.attack_subtype = family;
    q.text = std::move(text);
    q.user = UserContext::make(user_tenant, clearances[i % clearances.size()]);
    queries.push_back(std::move(q));
  }
  return queries;
}

// ---------------------------------------------------------------------------
// Index assembly

struct BuiltIndexes {
  std::vector<EntitySpec> dictionary;
  IngestResult artifacts;
  GraphStore graph;
  VectorIndex index;
};

inline BuiltIndexes build_indexes(const std::vector<Document>& docs,
                                  const IngestOptions& options = {}) {
  auto dictionary = build_dictionary(docs);
  auto artifacts = ingest_corpus(docs, dictionary, options);
  auto graph = build_graph(artifacts.nodes, artifacts.edges);
  auto index = build_vector_index(artifacts.nodes, options.embedding_dim);
  return BuiltIndexes{std::move(dictionary), std::move(artifacts),
                      std::move(graph), std::move(index)};
}

// Reassembles indexes from previously persisted node and edge lists; the
// vector index is always derived from the chunk nodes' text.
inline BuiltIndexes assemble_indexes(const std::vector<Document>& docs,
                                     std::vector<GraphNode> nodes,
                                     std::vector<TypedEdge> edges,
                                     const IngestOptions& options = {}) {
  auto dictionary = build_dictionary(docs);
  IngestResult artifacts;
  artifacts.nodes = std::move(nodes);
  artifacts.edges = std::move(edges);
  auto graph = build_graph(artifacts.nodes, artifacts.edges);
  auto index = build_vector_index(artifacts.nodes, options.embedding_dim);
  return BuiltIndexes{std::move(dictionary), std::move(artifacts),
                      std::move(graph), std::move(index)};
}

// ---------------------------------------------------------------------------
// Running queries

inline std::vector<EvaluatedQuery> run_queries(
    const VectorIndex& index, const GraphStore* graph,
    const PipelineConfig& config, const std::vector<Query>& queries) {
  Pipeline pipeline(index, graph);
  std::vector<EvaluatedQuery> out;
  out.reserve(queries.size());
  for (const auto& q : queries)
    out.push_back(EvaluatedQuery{q, pipeline.run_query(q, config)});
  return out;
}

inline std::vector<EvaluatedQuery> run_variant(
    const BuiltIndexes& built, Variant variant,
    const std::vector<Query>& queries) {
  const PipelineConfig config = PipelineConfig::for_variant(variant);
  const GraphStore* graph = variant == Variant::P1 ? nullptr : &built.graph;
  return run_queries(built.index, graph, config, queries);
}

inline std::vector<Query> adversarial_subset(const std::vector<Query>& queries,
                                             std::size_t limit) {
  std::vector<Query> out;
  for (const auto& q : queries) {
    if (q.kind != QueryKind::Adversarial) continue;
    out.push_back(q);
    if (out.size() == limit) break;
  }
  return out;
}

inline std::vector<EvaluatedQuery> filter_by_clearance(
    const std::vector<EvaluatedQuery>& records, Tier clearance) {
  std::vector<EvaluatedQuery> out;
  for (const auto& r : records)
    if (r.query.user.clearance == clearance) out.push_back(r);
  return out;
}

inline std::vector<EvaluatedQuery> filter_by_kind(
    const std::vector<EvaluatedQuery>& records, QueryKind kind) {
  std::vector<EvaluatedQuery> out;
  for (const auto& r : records)
    if (r.query.kind == kind) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------------------
// Ablation

struct AblationRun {
  Variant variant = Variant::P1;
  std::vector<EvaluatedQuery> records;
};

inline std::vector<AblationRun> run_ablation(const BuiltIndexes& built,
                                             const std::vector<Query>& queries) {
  std::vector<AblationRun> runs;
  for (Variant v : kAllVariants)
    runs.push_back(AblationRun{v, run_variant(built, v, queries)});
  return runs;
}

// ---------------------------------------------------------------------------
// Attack grids

struct AttackCell {
  AttackKind kind = AttackKind::A1;
  double forgery_rate = 0.0;  // nonzero only for forged-label cells
  Variant variant = Variant::P3;
  std::size_t payload_docs = 0;
  std::size_t forged_nodes = 0;
  std::vector<EvaluatedQuery> records;
};

namespace detail {

inline void verify_clean(const GraphStore& clean, std::uint64_t expected_hash,
                         const std::string& cell) {
  if (clean.content_hash() != expected_hash) {
    throw ContaminationError("clean graph changed while evaluating " + cell);
  }
}

}  // namespace detail

// Injection grid: the four payload-based attacks against an undefended
// pipeline and three defended ones. Each cell rebuilds dictionary, graph,
// and vector index from the organic corpus plus that attack's payload, so
// cells are fully isolated; the clean graph is hash-checked after each cell.
inline std::vector<AttackCell> run_attack_grid(
    const std::vector<Document>& organic, const BuiltIndexes& clean,
    const CorpusView& view, const IngestOptions& options,
    std::uint64_t seed) {
  const std::uint64_t clean_hash = clean.graph.content_hash();
  const std::array<AttackKind, 4> kinds = {AttackKind::A1, AttackKind::A2,
                                           AttackKind::A3, AttackKind::A4};
  const std::array<Variant, 4> variants = {Variant::P3, Variant::P4,
                                           Variant::P6, Variant::P8};
  std::vector<AttackCell> cells;
  for (AttackKind kind : kinds) {
    AttackSpec spec;
    spec.kind = kind;
    spec.seed = seed;
    const AttackPayload payload = craft_attack(spec, view);
    for (Variant variant : variants) {
      std::vector<Document> combined = organic;
      combined.insert(combined.end(), payload.documents.begin(),
                      payload.documents.end());
      const BuiltIndexes poisoned = build_indexes(combined, options);
      AttackCell cell;
      cell.kind = kind;
      cell.variant = variant;
      cell.payload_docs = payload.documents.size();
      cell.records = run_variant(poisoned, variant, payload.queries);
      cells.push_back(std::move(cell));
      detail::verify_clean(clean.graph, clean_hash,
                           attack_kind_name(kind) + " x " +
                               variant_name(variant));
    }
  }
  return cells;
}

// Adaptive grid: label forgery at three rates, dictionary manipulation, and
// the query-only attack, each against P3 plus the three strongest defended
// variants. Forgery rewrites tenant labels on the already-built poisoned
// graph, after ingestion, which is exactly where a metadata attack operates.
inline std::vector<AttackCell> run_adaptive_grid(
    const std::vector<Document>& organic, const BuiltIndexes& clean,
    const CorpusView& view, const IngestOptions& options,
    std::uint64_t seed) {
  const std::uint64_t clean_hash = clean.graph.content_hash();
  const std::array<Variant, 4> variants = {Variant::P3, Variant::P4,
                                           Variant::P7, Variant::P8};
  const std::array<double, 3> forgery_rates = {0.01, 0.05, 0.10};
  std::vector<AttackCell> cells;

  {
    AttackSpec spec;
    spec.kind = AttackKind::A5;
    spec.seed = seed;
    const AttackPayload payload = craft_attack(spec, view);
    for (double rate : forgery_rates) {
      for (Variant variant : variants) {
        std::vector<Document> combined = organic;
        combined.insert(combined.end(), payload.documents.begin(),
                        payload.documents.end());
        BuiltIndexes poisoned = build_indexes(combined, options);
        AttackCell cell;
        cell.kind = AttackKind::A5;
        cell.forgery_rate = rate;
        cell.variant = variant;
        cell.payload_docs = payload.documents.size();
        cell.forged_nodes = apply_metadata_forgery(
            poisoned.graph, rate, spec.target_tenant, seed);
        cell.records = run_variant(poisoned, variant, payload.queries);
        cells.push_back(std::move(cell));
        detail::verify_clean(clean.graph, clean_hash,
                             "A5 x " + variant_name(variant));
      }
    }
  }

  {
    AttackSpec spec;
    spec.kind = AttackKind::A6;
    spec.seed = seed;
    const AttackPayload payload = craft_attack(spec, view);
    for (Variant variant : variants) {
      std::vector<Document> combined = organic;
      combined.insert(combined.end(), payload.documents.begin(),
                      payload.documents.end());
      const BuiltIndexes poisoned = build_indexes(combined, options);
      AttackCell cell;
      cell.kind = AttackKind::A6;
      cell.variant = variant;
      cell.payload_docs = payload.documents.size();
      cell.records = run_variant(poisoned, variant, payload.queries);
      cells.push_back(std::move(cell));
      detail::verify_clean(clean.graph, clean_hash,
                           "A6 x " + variant_name(variant));
    }
  }

  {
    AttackSpec spec;
    spec.kind = AttackKind::A7;
    spec.seed = seed;
    const AttackPayload payload = craft_attack(spec, view);
    for (Variant variant : variants) {
      AttackCell cell;
      cell.kind = AttackKind::A7;
      cell.variant = variant;
      cell.records = run_variant(clean, variant, payload.queries);
      cells.push_back(std::move(cell));
      detail::verify_clean(clean.graph, clean_hash,
                           "A7 x " + variant_name(variant));
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Sweeps

struct TraversalPoint {
  TraversalBudget budget;
  MetricsSummary summary;
};

// Expansion budget sweep on the undefended pipeline: 3 depths x 3 branching
// caps x 3 totals, against the adversarial probes.
inline std::vector<TraversalPoint> run_traversal_sweep(
    const BuiltIndexes& built, const std::vector<Query>& queries) {
  const std::array<int, 3> hop_values = {1, 2, 3};
  const std::array<std::size_t, 3> branching_values = {5, 10, 20};
  const std::array<std::size_t, 3> total_values = {25, 50, 100};
  std::vector<TraversalPoint> points;
  SummaryOptions opts;
  opts.with_bootstrap = false;
  for (int hops : hop_values) {
    for (std::size_t branching : branching_values) {
      for (std::size_t total : total_values) {
        PipelineConfig config = PipelineConfig::for_variant(Variant::P3);
        config.budget = TraversalBudget{hops, branching, total};
        auto records = run_queries(built.index, &built.graph, config, queries);
        points.push_back(
            TraversalPoint{config.budget, summarize(records, opts)});
      }
    }
  }
  return points;
}

struct MislabelPoint {
  double rate = 0.0;
  std::size_t relabeled = 0;
  MetricsSummary summary;
};

// Sensitivity-label corruption sweep: a fraction of retrievable nodes is
// downgraded to PUBLIC and the authorization-filtered pipeline is re-run.
// The filter trusts exactly the labels the leakage metric reads, so this
// measures how far "secure" and "correctly labeled" diverge.
inline std::vector<MislabelPoint> run_mislabel_sweep(
    const BuiltIndexes& built, const std::vector<Query>& queries,
    std::uint64_t seed) {
  const std::array<double, 5> rates = {0.001, 0.005, 0.01, 0.02, 0.05};
  std::vector<MislabelPoint> points;
  SummaryOptions opts;
  opts.with_bootstrap = false;
  const PipelineConfig config = PipelineConfig::for_variant(Variant::P4);
  for (std::size_t ri = 0; ri < rates.size(); ++ri) {
    GraphStore corrupted = built.graph;
    const auto ids = corrupted.retrievable_node_ids();
    const auto count = static_cast<std::size_t>(
        rates[ri] * static_cast<double>(ids.size()));
    Rng rng(derive_stream(seed, "mislabel::" + std::to_string(ri)));
    for (std::size_t idx : rng.sample_indices(ids.size(), count))
      corrupted.relabel_sensitivity(ids[idx], Tier::Public);
    auto records = run_queries(built.index, &corrupted, config, queries);
    points.push_back(MislabelPoint{rates[ri], count, summarize(records, opts)});
  }
  return points;
}

struct ConnectivityPoint {
  std::size_t bridge_count = 0;
  std::size_t shared_entities = 0;
  MetricsSummary summary;
};

// Bridge-density sweep: regenerates the corpus with the same seed but a
// varying number of cross-tenant bridge entities, rebuilds everything, and
// replays the same queries against the undefended pipeline.
inline std::vector<ConnectivityPoint> run_connectivity_sweep(
    const CorpusConfig& base_config, const IngestOptions& options,
    const std::vector<Query>& queries) {
  const std::array<std::size_t, 6> bridge_counts = {0, 5, 10, 15, 25, 40};
  std::vector<ConnectivityPoint> points;
  SummaryOptions opts;
  opts.with_bootstrap = false;
  for (std::size_t b : bridge_counts) {
    CorpusConfig config = base_config;
    config.bridge_count = b;
    const auto docs = generate_corpus(config);
    const BuiltIndexes built = build_indexes(docs, options);
    auto records = run_variant(built, Variant::P3, queries);
    points.push_back(ConnectivityPoint{b, built.graph.stats().shared_entities,
                                       summarize(records, opts)});
  }
  return points;
}

}  // namespace pivotbench
