#pragma once

// Report rendering. `build_report` folds every experiment into one JSON
// document with stable key order and derived statistics (confidence
// intervals, amplification factors, utility retention, bridge attribution).
// The CSV and SVG renderers read only that document, so re-rendering from a
// saved report reproduces the exact same bytes. Latency is kept in its own
// report: wall-clock numbers vary run to run and must not pollute the
// deterministic outputs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "pivotbench/core.hpp"
#include "pivotbench/harness.hpp"
#include "pivotbench/io.hpp"
#include "pivotbench/metrics.hpp"

namespace pivotbench {

struct ExperimentResults {
  CorpusConfig corpus;
  IngestOptions ingest;
  std::uint64_t seed = 42;
  GraphStats graph_stats;
  std::vector<AblationRun> ablation;
  std::vector<AttackCell> attack_grid;
  std::vector<AttackCell> adaptive_grid;
  std::vector<TraversalPoint> traversal;
  std::vector<MislabelPoint> mislabel;
  std::vector<ConnectivityPoint> connectivity;
  BridgeAttribution bridges;
};

namespace detail {

inline std::string fmt6(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::string(buf);
}

inline Json json_double(double v) {
  if (std::isinf(v)) return Json("inf");
  return Json(v);
}

inline Json summary_to_json(const MetricsSummary& s) {
  Json j;
  j["n"] = s.n;
  j["rpr"] = json_double(s.rpr);
  j["rpr_ci"] = Json::array({json_double(s.rpr_ci.lo), json_double(s.rpr_ci.hi)});
  j["mean_leakage"] = json_double(s.mean_leakage);
  j["leakage_ci"] = Json::array(
      {json_double(s.leakage_ci.lo), json_double(s.leakage_ci.hi)});
  j["mean_swl"] = json_double(s.mean_swl);
  j["mean_context"] = json_double(s.mean_context);
  j["leaking_queries"] = s.leaking_queries;
  j["pd_min"] = s.pd_min ? Json(*s.pd_min) : Json(nullptr);
  j["pd_median"] = s.pd_min ? json_double(s.pd_median) : Json(nullptr);
  j["pd_max"] = s.pd_max ? Json(*s.pd_max) : Json(nullptr);
  if (s.amplification_vs_baseline) {
    j["af_classical"] = json_double(s.amplification_vs_baseline->classical);
    j["af_epsilon"] = json_double(s.amplification_vs_baseline->stabilized);
  }
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Report assembly

inline Json build_report(const ExperimentResults& results) {
  SummaryOptions with_ci;
  with_ci.with_bootstrap = true;
  SummaryOptions no_ci;
  no_ci.with_bootstrap = false;

  Json report;
  {
    Json cfg;
    cfg["documents"] = results.corpus.num_documents;
    cfg["bridge_count"] = results.corpus.bridge_count;
    Json mix = Json::array();
    for (double m : results.corpus.sensitivity_mix) mix.push_back(m);
    cfg["sensitivity_mix"] = mix;
    cfg["embedding_dim"] = results.ingest.embedding_dim;
    cfg["seed"] = results.seed;
    report["config"] = cfg;
  }
  {
    Json g;
    g["chunk_nodes"] = results.graph_stats.chunk_nodes;
    g["entity_nodes"] = results.graph_stats.entity_nodes;
    g["document_nodes"] = results.graph_stats.document_nodes;
    g["total_edges"] = results.graph_stats.total_edges;
    g["shared_entities"] = results.graph_stats.shared_entities;
    Json by_rel;
    for (const auto& [rel, count] : results.graph_stats.edges_by_relation)
      by_rel[rel] = count;
    g["edges_by_relation"] = by_rel;
    report["graph"] = g;
  }

  // Per-variant, per-class ablation rows. The vector-only run of the same
  // class is the amplification baseline.
  std::map<std::string, double> p1_baseline;  // class -> mean leakage
  for (const auto& run : results.ablation) {
    if (run.variant != Variant::P1) continue;
    for (QueryKind kind : {QueryKind::Benign, QueryKind::Adversarial}) {
      auto slice = filter_by_kind(run.records, kind);
      p1_baseline[query_kind_name(kind)] = summarize(slice, no_ci).mean_leakage;
    }
  }

  Json ablation = Json::array();
  Json ablation_internal = Json::array();
  for (const auto& run : results.ablation) {
    for (QueryKind kind : {QueryKind::Benign, QueryKind::Adversarial}) {
      auto slice = filter_by_kind(run.records, kind);
      SummaryOptions opts = with_ci;
      opts.vector_baseline_mean = p1_baseline[query_kind_name(kind)];
      Json row;
      row["variant"] = variant_name(run.variant);
      row["class"] = query_kind_name(kind);
      row["metrics"] = detail::summary_to_json(summarize(slice, opts));
      ablation.push_back(row);

      auto internal_slice = filter_by_clearance(slice, Tier::Internal);
      SummaryOptions iopts = opts;
      Json irow;
      irow["variant"] = variant_name(run.variant);
      irow["class"] = query_kind_name(kind);
      irow["metrics"] = detail::summary_to_json(summarize(internal_slice, iopts));
      ablation_internal.push_back(irow);
    }
  }
  report["ablation"] = ablation;
  report["ablation_internal"] = ablation_internal;

  // Amplification at several smoothing levels, adversarial class only.
  {
    const double base = p1_baseline[query_kind_name(QueryKind::Adversarial)];
    Json amp = Json::array();
    for (const auto& run : results.ablation) {
      if (run.variant == Variant::P1) continue;
      auto slice = filter_by_kind(run.records, QueryKind::Adversarial);
      const double hybrid = summarize(slice, no_ci).mean_leakage;
      Json row;
      row["variant"] = variant_name(run.variant);
      row["hybrid_mean_leakage"] = detail::json_double(hybrid);
      row["vector_mean_leakage"] = detail::json_double(base);
      row["af_classical"] =
          detail::json_double(amplification(hybrid, base, kDefaultEpsilon).classical);
      for (double eps : {0.01, 0.05, 0.1, 0.5}) {
        char key[32];
        std::snprintf(key, sizeof(key), "af_eps_%.2f", eps);
        row[key] =
            detail::json_double(amplification(hybrid, base, eps).stabilized);
      }
      amp.push_back(row);
    }
    report["amplification"] = amp;
  }

  // Utility: authorized items retained, relative to the undefended hybrid.
  {
    std::optional<double> p3_authorized;
    for (const auto& run : results.ablation) {
      if (run.variant == Variant::P3)
        p3_authorized = utility_summary(run.records).mean_authorized;
    }
    Json utility = Json::array();
    for (const auto& run : results.ablation) {
      const UtilitySummary u = utility_summary(run.records, p3_authorized);
      Json row;
      row["variant"] = variant_name(run.variant);
      row["mean_context"] = detail::json_double(u.mean_context);
      row["mean_authorized"] = detail::json_double(u.mean_authorized);
      row["authorization_rate"] = detail::json_double(u.authorization_rate);
      row["retention_vs_p3"] =
          u.retention ? detail::json_double(*u.retention) : Json(nullptr);
      utility.push_back(row);
    }
    report["utility"] = utility;
  }

  {
    Json grid = Json::array();
    for (const auto& cell : results.attack_grid) {
      Json row;
      row["attack"] = attack_kind_name(cell.kind);
      row["variant"] = variant_name(cell.variant);
      row["payload_docs"] = cell.payload_docs;
      row["metrics"] = detail::summary_to_json(summarize(cell.records, no_ci));
      grid.push_back(row);
    }
    report["attack_grid"] = grid;
  }
  {
    Json grid = Json::array();
    for (const auto& cell : results.adaptive_grid) {
      Json row;
      row["attack"] = attack_kind_name(cell.kind);
      row["forgery_rate"] = detail::json_double(cell.forgery_rate);
      row["forged_nodes"] = cell.forged_nodes;
      row["variant"] = variant_name(cell.variant);
      row["payload_docs"] = cell.payload_docs;
      row["metrics"] = detail::summary_to_json(summarize(cell.records, no_ci));
      grid.push_back(row);
    }
    report["adaptive_grid"] = grid;
  }
  {
    Json sweep = Json::array();
    for (const auto& p : results.traversal) {
      Json row;
      row["max_hops"] = p.budget.max_hops;
      row["max_branching"] = p.budget.max_branching;
      row["max_total"] = p.budget.max_total;
      row["metrics"] = detail::summary_to_json(p.summary);
      sweep.push_back(row);
    }
    report["traversal_sweep"] = sweep;
  }
  {
    Json sweep = Json::array();
    for (const auto& p : results.mislabel) {
      Json row;
      row["rate"] = detail::json_double(p.rate);
      row["relabeled_nodes"] = p.relabeled;
      row["metrics"] = detail::summary_to_json(p.summary);
      sweep.push_back(row);
    }
    report["mislabel_sweep"] = sweep;
  }
  {
    Json sweep = Json::array();
    for (const auto& p : results.connectivity) {
      Json row;
      row["bridge_count"] = p.bridge_count;
      row["shared_entities"] = p.shared_entities;
      row["metrics"] = detail::summary_to_json(p.summary);
      sweep.push_back(row);
    }
    report["connectivity_sweep"] = sweep;
  }
  {
    Json attribution;
    Json cats = Json::array();
    for (const auto& [name, stats] : results.bridges.by_category) {
      Json row;
      row["category"] = name;
      row["queries"] = stats.queries;
      row["leaked_items"] = stats.leaked_items;
      cats.push_back(row);
    }
    attribution["by_category"] = cats;
    attribution["no_bridge_queries"] = results.bridges.no_bridge_queries;
    attribution["leaking_queries"] = results.bridges.leaking_queries;
    report["bridge_attribution"] = attribution;
  }
  return report;
}

// Latency lives outside the main report; see the header comment.
inline Json build_latency_report(const ExperimentResults& results) {
  Json rows = Json::array();
  for (const auto& run : results.ablation) {
    std::vector<double> lat;
    for (const auto& r : run.records) lat.push_back(r.result.latency_ms);
    std::sort(lat.begin(), lat.end());
    double mean = 0.0;
    for (double v : lat) mean += v;
    if (!lat.empty()) mean /= static_cast<double>(lat.size());
    Json row;
    row["variant"] = variant_name(run.variant);
    row["n"] = lat.size();
    row["p50_ms"] = lat.empty() ? 0.0 : percentile_sorted(lat, 0.50);
    row["p95_ms"] = lat.empty() ? 0.0 : percentile_sorted(lat, 0.95);
    row["mean_ms"] = mean;
    rows.push_back(row);
  }
  Json report;
  report["latency"] = rows;
  return report;
}

// ---------------------------------------------------------------------------
// CSV rendering (all derived from the JSON report)

namespace detail {

inline std::string csv_metric(const Json& m, const char* key) {
  if (!m.contains(key) || m.at(key).is_null()) return "";
  const auto& v = m.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return fmt6(v.get<double>());
}

inline std::string csv_ci(const Json& m, const char* key, std::size_t i) {
  return fmt6(m.at(key).at(i).get<double>());
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out.good())
    throw StateError("cannot open for writing: " + path.string());
  out << content;
}

inline std::string ablation_csv(const Json& rows) {
  std::string csv =
      "variant,class,n,rpr,rpr_lo,rpr_hi,mean_leakage,leak_lo,leak_hi,"
      "mean_swl,mean_context,pd_min,pd_median,pd_max,af_classical,af_epsilon\n";
  for (const auto& row : rows) {
    const Json& m = row.at("metrics");
    csv += row.at("variant").get<std::string>();
    csv += "," + row.at("class").get<std::string>();
    csv += "," + std::to_string(m.at("n").get<std::size_t>());
    csv += "," + csv_metric(m, "rpr");
    csv += "," + csv_ci(m, "rpr_ci", 0) + "," + csv_ci(m, "rpr_ci", 1);
    csv += "," + csv_metric(m, "mean_leakage");
    csv += "," + csv_ci(m, "leakage_ci", 0) + "," + csv_ci(m, "leakage_ci", 1);
    csv += "," + csv_metric(m, "mean_swl");
    csv += "," + csv_metric(m, "mean_context");
    csv += "," + csv_metric(m, "pd_min");
    csv += "," + csv_metric(m, "pd_median");
    csv += "," + csv_metric(m, "pd_max");
    csv += "," + csv_metric(m, "af_classical");
    csv += "," + csv_metric(m, "af_epsilon");
    csv += "\n";
  }
  return csv;
}

}  // namespace detail

inline void write_csv_reports(const Json& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  detail::write_text_file(dir / "ablation.csv",
                          detail::ablation_csv(report.at("ablation")));
  detail::write_text_file(
      dir / "ablation_internal.csv",
      detail::ablation_csv(report.at("ablation_internal")));

  {
    std::string csv = "variant,hybrid_mean_leakage,vector_mean_leakage,"
                      "af_classical,af_eps_0.01,af_eps_0.05,af_eps_0.10,"
                      "af_eps_0.50\n";
    for (const auto& row : report.at("amplification")) {
      csv += row.at("variant").get<std::string>();
      csv += "," + detail::csv_metric(row, "hybrid_mean_leakage");
      csv += "," + detail::csv_metric(row, "vector_mean_leakage");
      csv += "," + detail::csv_metric(row, "af_classical");
      csv += "," + detail::csv_metric(row, "af_eps_0.01");
      csv += "," + detail::csv_metric(row, "af_eps_0.05");
      csv += "," + detail::csv_metric(row, "af_eps_0.10");
      csv += "," + detail::csv_metric(row, "af_eps_0.50");
      csv += "\n";
    }
    detail::write_text_file(dir / "amplification.csv", csv);
  }
  {
    std::string csv = "variant,mean_context,mean_authorized,"
                      "authorization_rate,retention_vs_p3\n";
    for (const auto& row : report.at("utility")) {
      csv += row.at("variant").get<std::string>();
      csv += "," + detail::csv_metric(row, "mean_context");
      csv += "," + detail::csv_metric(row, "mean_authorized");
      csv += "," + detail::csv_metric(row, "authorization_rate");
      csv += "," + detail::csv_metric(row, "retention_vs_p3");
      csv += "\n";
    }
    detail::write_text_file(dir / "utility.csv", csv);
  }
  {
    std::string csv = "attack,variant,payload_docs,n,rpr,mean_leakage,"
                      "mean_swl,mean_context\n";
    for (const auto& row : report.at("attack_grid")) {
      const Json& m = row.at("metrics");
      csv += row.at("attack").get<std::string>();
      csv += "," + row.at("variant").get<std::string>();
      csv += "," + std::to_string(row.at("payload_docs").get<std::size_t>());
      csv += "," + std::to_string(m.at("n").get<std::size_t>());
      csv += "," + detail::csv_metric(m, "rpr");
      csv += "," + detail::csv_metric(m, "mean_leakage");
      csv += "," + detail::csv_metric(m, "mean_swl");
      csv += "," + detail::csv_metric(m, "mean_context");
      csv += "\n";
    }
    detail::write_text_file(dir / "attack_grid.csv", csv);
  }
  {
    std::string csv = "attack,forgery_rate,forged_nodes,variant,payload_docs,"
                      "n,rpr,mean_leakage,mean_context\n";
    for (const auto& row : report.at("adaptive_grid")) {
      const Json& m = row.at("metrics");
      csv += row.at("attack").get<std::string>();
      csv += "," + detail::csv_metric(row, "forgery_rate");
      csv += "," + std::to_string(row.at("forged_nodes").get<std::size_t>());
      csv += "," + row.at("variant").get<std::string>();
      csv += "," + std::to_string(row.at("payload_docs").get<std::size_t>());
      csv += "," + std::to_string(m.at("n").get<std::size_t>());
      csv += "," + detail::csv_metric(m, "rpr");
      csv += "," + detail::csv_metric(m, "mean_leakage");
      csv += "," + detail::csv_metric(m, "mean_context");
      csv += "\n";
    }
    detail::write_text_file(dir / "adaptive.csv", csv);
  }
  {
    std::string csv =
        "max_hops,max_branching,max_total,rpr,mean_leakage,mean_context\n";
    for (const auto& row : report.at("traversal_sweep")) {
      const Json& m = row.at("metrics");
      csv += std::to_string(row.at("max_hops").get<int>());
      csv += "," + std::to_string(row.at("max_branching").get<std::size_t>());
      csv += "," + std::to_string(row.at("max_total").get<std::size_t>());
      csv += "," + detail::csv_metric(m, "rpr");
      csv += "," + detail::csv_metric(m, "mean_leakage");
      csv += "," + detail::csv_metric(m, "mean_context");
      csv += "\n";
    }
    detail::write_text_file(dir / "traversal.csv", csv);
  }
  {
    std::string csv = "rate,relabeled_nodes,rpr,mean_leakage,mean_context\n";
    for (const auto& row : report.at("mislabel_sweep")) {
      const Json& m = row.at("metrics");
      csv += detail::csv_metric(row, "rate");
      csv += "," + std::to_string(row.at("relabeled_nodes").get<std::size_t>());
      csv += "," + detail::csv_metric(m, "rpr");
      csv += "," + detail::csv_metric(m, "mean_leakage");
      csv += "," + detail::csv_metric(m, "mean_context");
      csv += "\n";
    }
    detail::write_text_file(dir / "mislabel.csv", csv);
  }
  {
    std::string csv =
        "bridge_count,shared_entities,rpr,mean_leakage,mean_context\n";
    for (const auto& row : report.at("connectivity_sweep")) {
      const Json& m = row.at("metrics");
      csv += std::to_string(row.at("bridge_count").get<std::size_t>());
      csv += "," + std::to_string(row.at("shared_entities").get<std::size_t>());
      csv += "," + detail::csv_metric(m, "rpr");
      csv += "," + detail::csv_metric(m, "mean_leakage");
      csv += "," + detail::csv_metric(m, "mean_context");
      csv += "\n";
    }
    detail::write_text_file(dir / "connectivity.csv", csv);
  }
  {
    std::string csv = "category,queries,leaked_items\n";
    const Json& attr = report.at("bridge_attribution");
    for (const auto& row : attr.at("by_category")) {
      csv += row.at("category").get<std::string>();
      csv += "," + std::to_string(row.at("queries").get<std::size_t>());
      csv += "," + std::to_string(row.at("leaked_items").get<std::size_t>());
      csv += "\n";
    }
    csv += "no_bridge," +
           std::to_string(attr.at("no_bridge_queries").get<std::size_t>()) +
           ",0\n";
    detail::write_text_file(dir / "bridges.csv", csv);
  }
}

inline void write_latency_reports(const Json& latency,
                                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  detail::write_text_file(dir / "latency.json", latency.dump(2) + "\n");
  std::string csv = "variant,n,p50_ms,p95_ms,mean_ms\n";
  for (const auto& row : latency.at("latency")) {
    csv += row.at("variant").get<std::string>();
    csv += "," + std::to_string(row.at("n").get<std::size_t>());
    csv += "," + detail::fmt6(row.at("p50_ms").get<double>());
    csv += "," + detail::fmt6(row.at("p95_ms").get<double>());
    csv += "," + detail::fmt6(row.at("mean_ms").get<double>());
    csv += "\n";
  }
  detail::write_text_file(dir / "latency.csv", csv);
}

// ---------------------------------------------------------------------------
// Plots: self-contained SVG bar charts, no external tooling

namespace detail {

inline std::string bar_chart_svg(const std::string& title,
                                 const std::vector<std::string>& labels,
                                 const std::vector<double>& values,
                                 const std::string& y_label) {
  const double width = 640.0;
  const double height = 400.0;
  const double margin_left = 60.0;
  const double margin_bottom = 50.0;
  const double margin_top = 40.0;
  const double plot_w = width - margin_left - 20.0;
  const double plot_h = height - margin_top - margin_bottom;
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, v);
  if (vmax <= 0.0) vmax = 1.0;

  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"24\" font-family=\"sans-serif\" "
                "font-size=\"16\" text-anchor=\"middle\">%s</text>\n",
                width / 2.0, title.c_str());
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"16\" y=\"%.1f\" font-family=\"sans-serif\" "
                "font-size=\"12\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 16 %.1f)\">%s</text>\n",
                margin_top + plot_h / 2.0, margin_top + plot_h / 2.0,
                y_label.c_str());
  svg += buf;
  // Axes.
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"black\"/>\n",
                margin_left, margin_top, margin_left, margin_top + plot_h);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"black\"/>\n",
                margin_left, margin_top + plot_h, margin_left + plot_w,
                margin_top + plot_h);
  svg += buf;

  const std::size_t n = labels.size();
  const double slot = n > 0 ? plot_w / static_cast<double>(n) : plot_w;
  const double bar_w = slot * 0.6;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = plot_h * (values[i] / vmax);
    const double x = margin_left + slot * static_cast<double>(i) +
                     (slot - bar_w) / 2.0;
    const double y = margin_top + plot_h - h;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                  "fill=\"#4878a8\"/>\n",
                  x, y, bar_w, h);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"11\" text-anchor=\"middle\">%s</text>\n",
                  x + bar_w / 2.0, margin_top + plot_h + 16.0,
                  labels[i].c_str());
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"10\" text-anchor=\"middle\">%.2f</text>\n",
                  x + bar_w / 2.0, y - 4.0, values[i]);
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace detail

inline void write_plot_reports(const Json& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  std::vector<std::string> labels;
  std::vector<double> rpr;
  std::vector<double> context;
  for (const auto& row : report.at("ablation")) {
    if (row.at("class").get<std::string>() !=
        query_kind_name(QueryKind::Adversarial))
      continue;
    labels.push_back(row.at("variant").get<std::string>());
    rpr.push_back(row.at("metrics").at("rpr").get<double>());
    context.push_back(row.at("metrics").at("mean_context").get<double>());
  }
  detail::write_text_file(
      dir / "rpr_by_variant.svg",
      detail::bar_chart_svg("Retrieval poisoning rate by pipeline variant",
                            labels, rpr, "RPR (adversarial queries)"));
  detail::write_text_file(
      dir / "context_by_variant.svg",
      detail::bar_chart_svg("Mean context size by pipeline variant", labels,
                            context, "items per query"));
}

inline void write_json_report(const Json& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  detail::write_text_file(fs::path(out_dir) / "headline.json",
                          report.dump(2) + "\n");
}

inline Json read_json_report(const std::string& path) {
  require_file(path, "run the experiments first");
  std::ifstream in(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw StateError(path + ": malformed report: " + e.what());
  }
}

}  // namespace pivotbench
