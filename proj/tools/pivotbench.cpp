// Command-line driver for the retrieval-pivot testbed.
//
//   pivotbench gen-corpus    --out-dir out [--docs N] [--bridges B] [--seed S]
//   pivotbench gen-queries   --out-dir out [--bridges B] [--seed S]
//   pivotbench build-indexes --out-dir out [--dim D]
//   pivotbench run           --out-dir out [--variant all|P1|P3..P8] [--plots]
//   pivotbench attack        --out-dir out --kind A1..A7 [--variant V] [--rate R]
//   pivotbench report        --out-dir out [--plots]
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure (missing inputs,
// inconsistent state, contamination).

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pivotbench/attacks.hpp"
#include "pivotbench/core.hpp"
#include "pivotbench/corpusgen.hpp"
#include "pivotbench/harness.hpp"
#include "pivotbench/io.hpp"
#include "pivotbench/metrics.hpp"
#include "pivotbench/pipeline.hpp"
#include "pivotbench/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pivotbench;

struct CommonOptions {
  std::string out_dir = "out";
  std::uint64_t seed = 42;
  std::size_t docs = 1000;
  std::size_t bridges = 15;
  std::size_t dim = 128;
  std::string variant = "all";
  std::string kind = "A1";
  double rate = 0.0;
  bool plots = false;
};

std::string path_in(const CommonOptions& o, const char* name) {
  return (fs::path(o.out_dir) / name).string();
}

CorpusConfig corpus_config(const CommonOptions& o) {
  CorpusConfig cfg;
  cfg.num_documents = o.docs;
  cfg.bridge_count = o.bridges;
  cfg.seed = o.seed;
  return cfg;
}

IngestOptions ingest_options(const CommonOptions& o) {
  IngestOptions opts;
  opts.embedding_dim = o.dim;
  return opts;
}

void print_summary_line(const std::string& label, const MetricsSummary& s) {
  std::printf("%-24s n=%zu rpr=%.4f mean_leakage=%.3f mean_context=%.2f\n",
              label.c_str(), s.n, s.rpr, s.mean_leakage, s.mean_context);
}

int cmd_gen_corpus(const CommonOptions& o) {
  fs::create_directories(o.out_dir);
  const auto docs = generate_corpus(corpus_config(o));
  write_documents(path_in(o, "corpus.jsonl"), docs);
  std::printf("wrote %zu documents to %s\n", docs.size(),
              path_in(o, "corpus.jsonl").c_str());
  return 0;
}

int cmd_gen_queries(const CommonOptions& o) {
  fs::create_directories(o.out_dir);
  const auto queries = generate_queries(corpus_config(o));
  write_queries(path_in(o, "queries.jsonl"), queries);
  std::printf("wrote %zu queries to %s\n", queries.size(),
              path_in(o, "queries.jsonl").c_str());
  return 0;
}

int cmd_build_indexes(const CommonOptions& o) {
  const auto docs = read_documents(path_in(o, "corpus.jsonl"),
                                   "run `pivotbench gen-corpus` first");
  const BuiltIndexes built = build_indexes(docs, ingest_options(o));
  write_nodes(path_in(o, "nodes.jsonl"), built.artifacts.nodes);
  write_edges(path_in(o, "edges.jsonl"), built.artifacts.edges);
  const GraphStats stats = built.graph.stats();
  std::printf("graph: %zu chunks, %zu entities, %zu documents, %zu edges, "
              "%zu shared entities\n",
              stats.chunk_nodes, stats.entity_nodes, stats.document_nodes,
              stats.total_edges, stats.shared_entities);
  std::printf("graph content hash: %016llx\n",
              static_cast<unsigned long long>(built.graph.content_hash()));
  return 0;
}

struct LoadedWorkspace {
  std::vector<Document> docs;
  std::vector<Query> queries;
  BuiltIndexes built;
};

LoadedWorkspace load_workspace(const CommonOptions& o) {
  auto docs = read_documents(path_in(o, "corpus.jsonl"),
                             "run `pivotbench gen-corpus` first");
  auto queries = read_queries(path_in(o, "queries.jsonl"),
                              "run `pivotbench gen-queries` first");
  auto nodes = read_nodes(path_in(o, "nodes.jsonl"),
                          "run `pivotbench build-indexes` first");
  auto edges = read_edges(path_in(o, "edges.jsonl"),
                          "run `pivotbench build-indexes` first");
  auto built = assemble_indexes(docs, std::move(nodes), std::move(edges),
                                ingest_options(o));
  return LoadedWorkspace{std::move(docs), std::move(queries),
                         std::move(built)};
}

ExperimentResults run_full_suite(const CommonOptions& o,
                                 const LoadedWorkspace& ws) {
  ExperimentResults results;
  results.corpus = corpus_config(o);
  // The connectivity sweep regenerates corpora from this config, so it must
  // reflect the loaded workspace rather than the generation-time default.
  results.corpus.num_documents = ws.docs.size();
  results.ingest = ingest_options(o);
  results.seed = o.seed;
  results.graph_stats = ws.built.graph.stats();

  std::printf("running ablation (7 variants x %zu queries)...\n",
              ws.queries.size());
  results.ablation = run_ablation(ws.built, ws.queries);
  for (const auto& run : results.ablation) {
    SummaryOptions no_ci;
    no_ci.with_bootstrap = false;
    print_summary_line(variant_name(run.variant),
                       summarize(run.records, no_ci));
  }

  const CorpusView view{entity_pools(), bridge_pool_selection(o.bridges),
                        &ws.built.graph};
  std::printf("running injection attack grid...\n");
  results.attack_grid =
      run_attack_grid(ws.docs, ws.built, view, ingest_options(o), o.seed);
  std::printf("running adaptive attack grid...\n");
  results.adaptive_grid =
      run_adaptive_grid(ws.docs, ws.built, view, ingest_options(o), o.seed);

  const auto adv100 = adversarial_subset(ws.queries, 100);
  const auto adv_all = adversarial_subset(ws.queries, ws.queries.size());
  std::printf("running traversal sweep (27 configurations)...\n");
  results.traversal = run_traversal_sweep(ws.built, adv100);
  std::printf("running mislabel sweep...\n");
  results.mislabel = run_mislabel_sweep(ws.built, adv_all, o.seed);
  std::printf("running connectivity sweep...\n");
  results.connectivity =
      run_connectivity_sweep(results.corpus, ingest_options(o), adv100);

  for (const auto& run : results.ablation) {
    if (run.variant == Variant::P3) {
      results.bridges = bridge_attribution(run.records, ws.built.graph,
                                           bridge_pool_selection(o.bridges));
    }
  }
  return results;
}

int cmd_run(const CommonOptions& o) {
  const LoadedWorkspace ws = load_workspace(o);

  if (o.variant != "all") {
    const Variant v = variant_from_name(o.variant);
    const auto records = run_variant(ws.built, v, ws.queries);
    SummaryOptions opts;
    const MetricsSummary s = summarize(records, opts);
    print_summary_line(o.variant, s);
    Json row;
    row["variant"] = o.variant;
    row["metrics"] = detail::summary_to_json(s);
    detail::write_text_file(
        fs::path(o.out_dir) / ("variant_" + o.variant + ".json"),
        row.dump(2) + "\n");
    return 0;
  }

  const ExperimentResults results = run_full_suite(o, ws);
  const Json report = build_report(results);
  write_json_report(report, o.out_dir);
  write_csv_reports(report, o.out_dir);
  write_latency_reports(build_latency_report(results), o.out_dir);
  if (o.plots) write_plot_reports(report, o.out_dir);
  std::printf("reports written to %s\n", o.out_dir.c_str());
  return 0;
}

int cmd_attack(const CommonOptions& o) {
  const LoadedWorkspace ws = load_workspace(o);
  AttackSpec spec;
  spec.kind = attack_kind_from_name(o.kind);
  spec.seed = o.seed;
  if (o.rate != 0.0) spec.forgery_rate = o.rate;

  const CorpusView view{entity_pools(), bridge_pool_selection(o.bridges),
                        &ws.built.graph};
  const AttackPayload payload = craft_attack(spec, view);

  const Variant variant =
      o.variant == "all" ? Variant::P3 : variant_from_name(o.variant);

  std::vector<EvaluatedQuery> records;
  std::size_t forged = 0;
  if (payload.documents.empty()) {
    records = run_variant(ws.built, variant, payload.queries);
  } else {
    std::vector<Document> combined = ws.docs;
    combined.insert(combined.end(), payload.documents.begin(),
                    payload.documents.end());
    BuiltIndexes poisoned = build_indexes(combined, ingest_options(o));
    if (spec.kind == AttackKind::A5) {
      const double rate = spec.forgery_rate > 0.0 ? spec.forgery_rate : 0.05;
      forged = apply_metadata_forgery(poisoned.graph, rate,
                                      spec.target_tenant, o.seed);
    }
    records = run_variant(poisoned, variant, payload.queries);
  }

  SummaryOptions no_ci;
  no_ci.with_bootstrap = false;
  const MetricsSummary s = summarize(records, no_ci);
  print_summary_line(o.kind + " vs " + variant_name(variant), s);
  Json row;
  row["attack"] = o.kind;
  row["variant"] = variant_name(variant);
  row["payload_docs"] = payload.documents.size();
  row["forged_nodes"] = forged;
  row["metrics"] = detail::summary_to_json(s);
  detail::write_text_file(
      fs::path(o.out_dir) /
          ("attack_" + o.kind + "_" + variant_name(variant) + ".json"),
      row.dump(2) + "\n");
  return 0;
}

int cmd_report(const CommonOptions& o) {
  const Json report = read_json_report(path_in(o, "headline.json"));
  write_csv_reports(report, o.out_dir);
  if (o.plots) write_plot_reports(report, o.out_dir);
  std::printf("reports rendered to %s\n", o.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid retrieval pivot testbed"};
  app.require_subcommand(1);
  CommonOptions o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out-dir", o.out_dir, "Workspace directory");
    cmd->add_option("--seed", o.seed, "Root random seed");
  };

  auto* gen_corpus = app.add_subcommand("gen-corpus", "Generate the corpus");
  add_common(gen_corpus);
  gen_corpus->add_option("--docs", o.docs, "Number of documents");
  gen_corpus->add_option("--bridges", o.bridges, "Cross-tenant bridge count");

  auto* gen_queries =
      app.add_subcommand("gen-queries", "Generate the evaluation queries");
  add_common(gen_queries);
  gen_queries->add_option("--bridges", o.bridges,
                          "Bridge count the corpus was generated with");

  auto* build_cmd =
      app.add_subcommand("build-indexes", "Ingest the corpus and persist the graph");
  add_common(build_cmd);
  build_cmd->add_option("--dim", o.dim, "Embedding dimension");

  auto* run_cmd = app.add_subcommand("run", "Run experiments and write reports");
  add_common(run_cmd);
  run_cmd->add_option("--dim", o.dim, "Embedding dimension");
  run_cmd->add_option("--bridges", o.bridges,
                      "Bridge count the corpus was generated with");
  run_cmd->add_option("--variant", o.variant,
                      "Pipeline variant (P1, P3..P8) or 'all'");
  run_cmd->add_flag("--plots", o.plots, "Also write SVG charts");

  auto* attack_cmd =
      app.add_subcommand("attack", "Run a single attack against one variant");
  add_common(attack_cmd);
  attack_cmd->add_option("--dim", o.dim, "Embedding dimension");
  attack_cmd->add_option("--bridges", o.bridges,
                         "Bridge count the corpus was generated with");
  attack_cmd->add_option("--kind", o.kind, "Attack kind (A1..A7)");
  attack_cmd->add_option("--variant", o.variant, "Pipeline variant");
  attack_cmd->add_option("--rate", o.rate, "Label forgery rate (A5)");

  auto* report_cmd =
      app.add_subcommand("report", "Re-render reports from headline.json");
  add_common(report_cmd);
  report_cmd->add_flag("--plots", o.plots, "Also write SVG charts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_corpus->parsed()) return cmd_gen_corpus(o);
    if (gen_queries->parsed()) return cmd_gen_queries(o);
    if (build_cmd->parsed()) return cmd_build_indexes(o);
    if (run_cmd->parsed()) return cmd_run(o);
    if (attack_cmd->parsed()) return cmd_attack(o);
    if (report_cmd->parsed()) return cmd_report(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
