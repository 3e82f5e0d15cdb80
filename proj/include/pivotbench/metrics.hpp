#pragma once

// Leakage measurement. The central predicate marks a context item sensitive
// for a user when it is over-clearance (weight: tier gap) or cross-tenant
// (weight: 1). Aggregates: retrieval poisoning rate (rpr), leakage count per
// query, sensitivity-weighted leakage (swl), amplification factor vs a
// vector-only baseline, pivot depth, percentile-bootstrap confidence
// intervals, utility summaries, and bridge-category attribution.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pivotbench/core.hpp"
#include "pivotbench/graphstore.hpp"
#include "pivotbench/rng.hpp"

namespace pivotbench {

inline constexpr double kDefaultEpsilon = 0.1;

struct SensitiveVerdict {
  bool sensitive = false;
  double weight = 0.0;
};

// Entity items are shared-namespace metadata and never count as leaked.
// Chunk items leak when their tier exceeds the user's clearance (weight =
// tier gap) or, at or below clearance, when their tenant is outside the
// user's allowed set (weight = 1).
inline SensitiveVerdict sensitive(const ContextItem& item,
                                  const UserContext& user) {
  if (item.kind != NodeKind::Chunk) return {};
  const int gap = tier_level(item.sensitivity) - tier_level(user.clearance);
  if (gap > 0) return {true, static_cast<double>(gap)};
  if (!item.tenant.empty() && user.allowed_tenants.count(item.tenant) == 0) {
    return {true, 1.0};
  }
  return {};
}

inline std::size_t leakage_count(const QueryResult& result,
                                 const UserContext& user) {
  std::size_t count = 0;
  for (const auto& item : result.context) {
    if (sensitive(item, user).sensitive) ++count;
  }
  return count;
}

inline double swl(const QueryResult& result, const UserContext& user) {
  double total = 0.0;
  for (const auto& item : result.context) {
    total += sensitive(item, user).weight;
  }
  return total;
}

// Minimum hop depth over leaked items; absent for a clean context.
inline std::optional<int> pivot_depth(const QueryResult& result,
                                      const UserContext& user) {
  std::optional<int> pd;
  for (const auto& item : result.context) {
    if (!sensitive(item, user).sensitive) continue;
    if (!pd.has_value() || item.hop_depth < *pd) pd = item.hop_depth;
  }
  return pd;
}

// ---------------------------------------------------------------------------
// Amplification factor

struct AmplificationResult {
  // hybrid / vector; +infinity when the vector baseline is exactly zero.
  double classical = 0.0;
  // hybrid / max(vector, epsilon): finite by construction.
  double stabilized = 0.0;
  double delta = 0.0;
  double epsilon = kDefaultEpsilon;
};

inline AmplificationResult amplification(double hybrid_mean,
                                         double vector_mean,
                                         double epsilon = kDefaultEpsilon) {
  if (epsilon <= 0.0) throw ConfigError("epsilon must be positive");
  if (hybrid_mean < 0.0 || vector_mean < 0.0) {
    throw ConfigError("leakage means must be non-negative");
  }
  AmplificationResult r;
  r.epsilon = epsilon;
  r.classical = vector_mean == 0.0
                    ? std::numeric_limits<double>::infinity()
                    : hybrid_mean / vector_mean;
  r.stabilized = hybrid_mean / std::max(vector_mean, epsilon);
  r.delta = hybrid_mean - vector_mean;
  return r;
}

// ---------------------------------------------------------------------------
// Bootstrap confidence intervals

// Linear-interpolation percentile of a sorted sample, q in [0, 1].
inline double percentile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw ConfigError("percentile of empty sample");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr std::size_t kDefaultBootstrapResamples = 10000;
inline constexpr std::size_t kMinBootstrapResamples = 1000;

// Percentile bootstrap over the mean of per-query values: resample with
// replacement, take each resample's mean, report the [2.5%, 97.5%] band.
// Deterministic for a fixed seed.
inline ConfidenceInterval bootstrap_ci(
    const std::vector<double>& samples,
    std::size_t resamples = kDefaultBootstrapResamples,
    std::uint64_t seed = 42) {
  if (samples.empty()) throw ConfigError("bootstrap over empty sample");
  if (resamples < kMinBootstrapResamples) {
    throw ConfigError("bootstrap needs >= " +
                      std::to_string(kMinBootstrapResamples) + " resamples");
  }
  Rng rng(seed);
  const std::size_t n = samples.size();
  std::vector<double> means;
  means.reserve(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += samples[rng.below(n)];
    }
    means.push_back(sum / static_cast<double>(n));
  }
  std::sort(means.begin(), means.end());
  return ConfidenceInterval{percentile_sorted(means, 0.025),
                            percentile_sorted(means, 0.975)};
}

// ---------------------------------------------------------------------------
// Aggregate summaries

struct EvaluatedQuery {
  Query query;
  QueryResult result;
};

struct MetricsSummary {
  std::size_t n = 0;
  double rpr = 0.0;
  ConfidenceInterval rpr_ci;
  double mean_leakage = 0.0;
  ConfidenceInterval leakage_ci;
  double mean_swl = 0.0;
  double mean_context = 0.0;
  std::size_t leaking_queries = 0;
  std::optional<int> pd_min;
  double pd_median = 0.0;
  std::optional<int> pd_max;
  // Filled when a vector-only baseline mean is supplied.
  std::optional<AmplificationResult> amplification_vs_baseline;
};

struct SummaryOptions {
  bool with_bootstrap = true;
  std::size_t resamples = kDefaultBootstrapResamples;
  std::uint64_t seed = 42;
  std::optional<double> vector_baseline_mean;
  double epsilon = kDefaultEpsilon;
};

inline MetricsSummary summarize(const std::vector<EvaluatedQuery>& records,
                                const SummaryOptions& options = {}) {
  MetricsSummary s;
  s.n = records.size();
  if (records.empty()) return s;

  std::vector<double> leak_counts;
  std::vector<double> leak_indicators;
  std::vector<int> pds;
  double swl_total = 0.0;
  double ctx_total = 0.0;
  for (const auto& rec : records) {
    const auto& user = rec.query.user;
    const std::size_t leaks = leakage_count(rec.result, user);
    leak_counts.push_back(static_cast<double>(leaks));
    leak_indicators.push_back(leaks > 0 ? 1.0 : 0.0);
    swl_total += swl(rec.result, user);
    ctx_total += static_cast<double>(rec.result.context.size());
    if (leaks > 0) {
      ++s.leaking_queries;
      auto pd = pivot_depth(rec.result, user);
      if (pd.has_value()) pds.push_back(*pd);
    }
  }
  const double n = static_cast<double>(records.size());
  double leak_sum = 0.0;
  for (double c : leak_counts) leak_sum += c;
  s.rpr = static_cast<double>(s.leaking_queries) / n;
  s.mean_leakage = leak_sum / n;
  s.mean_swl = swl_total / n;
  s.mean_context = ctx_total / n;

  if (!pds.empty()) {
    std::sort(pds.begin(), pds.end());
    s.pd_min = pds.front();
    s.pd_max = pds.back();
    const std::size_t m = pds.size();
    s.pd_median = (m % 2 == 1)
                      ? static_cast<double>(pds[m / 2])
                      : (static_cast<double>(pds[m / 2 - 1]) +
                         static_cast<double>(pds[m / 2])) /
                            2.0;
  }

  if (options.with_bootstrap) {
    s.rpr_ci = bootstrap_ci(leak_indicators, options.resamples, options.seed);
    s.leakage_ci = bootstrap_ci(leak_counts, options.resamples, options.seed);
  } else {
    s.rpr_ci = {s.rpr, s.rpr};
    s.leakage_ci = {s.mean_leakage, s.mean_leakage};
  }

  if (options.vector_baseline_mean.has_value()) {
    s.amplification_vs_baseline = amplification(
        s.mean_leakage, *options.vector_baseline_mean, options.epsilon);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Utility

struct UtilitySummary {
  double mean_context = 0.0;
  double mean_authorized = 0.0;  // non-leaked items per query
  double authorization_rate = 0.0;
  // mean_authorized divided by the supplied baseline (when given).
  std::optional<double> retention;
};

inline UtilitySummary utility_summary(
    const std::vector<EvaluatedQuery>& records,
    std::optional<double> baseline_mean_authorized = std::nullopt) {
  UtilitySummary u;
  if (records.empty()) return u;
  double items_total = 0.0;
  double auth_total = 0.0;
  for (const auto& rec : records) {
    items_total += static_cast<double>(rec.result.context.size());
    for (const auto& item : rec.result.context) {
      if (!sensitive(item, rec.query.user).sensitive) auth_total += 1.0;
    }
  }
  const double n = static_cast<double>(records.size());
  u.mean_context = items_total / n;
  u.mean_authorized = auth_total / n;
  u.authorization_rate = items_total > 0.0 ? auth_total / items_total : 0.0;
  if (baseline_mean_authorized.has_value() && *baseline_mean_authorized > 0.0) {
    u.retention = u.mean_authorized / *baseline_mean_authorized;
  }
  return u;
}

// ---------------------------------------------------------------------------
// Bridge attribution

struct BridgeCategoryStats {
  std::size_t queries = 0;
  std::size_t leaked_items = 0;
};

struct BridgeAttribution {
  std::map<std::string, BridgeCategoryStats> by_category;
  std::size_t no_bridge_queries = 0;
  std::size_t leaking_queries = 0;
};

// For each leaking query, classify the bridge entities sitting at hop 1 of
// its context; a leaked item is attributed to every category that has such a
// hop-1 entity adjacent to it in the graph. Queries leaking with no hop-1
// bridge fall into the no-bridge bucket. A query can count toward several
// categories, so category query totals may exceed the leaking total.
inline BridgeAttribution bridge_attribution(
    const std::vector<EvaluatedQuery>& records, const GraphStore& graph,
    const std::vector<EntitySpec>& bridge_specs) {
  std::map<std::string, std::string> category_of;  // entity node id -> cat
  for (const auto& spec : bridge_specs) {
    if (!spec.bridge || !spec.bridge_category.has_value()) continue;
    category_of[entity_node_id(spec.canonical_name)] =
        bridge_category_name(*spec.bridge_category);
  }

  BridgeAttribution out;
  for (const auto& rec : records) {
    const auto& user = rec.query.user;
    std::vector<const ContextItem*> leaked;
    for (const auto& item : rec.result.context) {
      if (sensitive(item, user).sensitive) leaked.push_back(&item);
    }
    if (leaked.empty()) continue;
    ++out.leaking_queries;

    std::map<std::string, std::vector<std::string>> hop1_by_cat;
    for (const auto& item : rec.result.context) {
      if (item.kind != NodeKind::Entity || item.hop_depth != 1) continue;
      auto it = category_of.find(item.node_id);
      if (it != category_of.end()) {
        hop1_by_cat[it->second].push_back(item.node_id);
      }
    }
    if (hop1_by_cat.empty()) {
      ++out.no_bridge_queries;
      continue;
    }
    for (const auto& [cat, ents] : hop1_by_cat) {
      ++out.by_category[cat].queries;
      for (const ContextItem* item : leaked) {
        bool attributed = false;
        for (const auto& ent : ents) {
          if (graph.are_adjacent(ent, item->node_id)) {
            attributed = true;
            break;
          }
        }
        if (attributed) ++out.by_category[cat].leaked_items;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank correlation (used by sweep analyses)

inline std::vector<double> average_ranks(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline double spearman(const std::vector<double>& xs,
                       const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ConfigError("spearman needs two equal-length samples of size >= 2");
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  if (dx == 0.0 || dy == 0.0) return 0.0;
  return num / std::sqrt(dx * dy);
}

}  // namespace pivotbench
