#pragma once

// Hybrid retrieval pipeline: vector top-k seeds an entity-graph expansion,
// the two result sets merge into one context. Seven variants differ only in
// which defense layers are active:
//
//   P1  vector-only (no graph stage)
//   P3  hybrid, no graph-side defenses
//   P4  + D1 post-expansion authorization filter
//   P5  + D2 edge-type allowlist
//   P6  + D3 tightened traversal budget
//   P7  + D4 provenance threshold
//   P8  + D5 merge-time authorization re-check
//
// The vector stage always prefilters by tenant and clearance, in every
// variant.

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pivotbench/core.hpp"
#include "pivotbench/graphstore.hpp"
#include "pivotbench/ingestion.hpp"
#include "pivotbench/metrics.hpp"
#include "pivotbench/vectorindex.hpp"

namespace pivotbench {

enum class Variant { P1, P3, P4, P5, P6, P7, P8 };

inline constexpr std::array<Variant, 7> kAllVariants = {
    Variant::P1, Variant::P3, Variant::P4, Variant::P5,
    Variant::P6, Variant::P7, Variant::P8};

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::P1: return "P1";
    case Variant::P3: return "P3";
    case Variant::P4: return "P4";
    case Variant::P5: return "P5";
    case Variant::P6: return "P6";
    case Variant::P7: return "P7";
    case Variant::P8: return "P8";
  }
  throw ConfigError("unknown variant");
}

inline Variant variant_from_name(std::string_view name) {
  for (Variant v : kAllVariants) {
    if (variant_name(v) == name) return v;
  }
  throw ConfigError("unknown variant name: " + std::string(name));
}

enum class Defense { D1, D2, D3, D4, D5 };

inline std::string defense_name(Defense d) {
  switch (d) {
    case Defense::D1: return "D1";
    case Defense::D2: return "D2";
    case Defense::D3: return "D3";
    case Defense::D4: return "D4";
    case Defense::D5: return "D5";
  }
  throw ConfigError("unknown defense");
}

inline constexpr std::size_t kDefaultTopK = 10;
inline constexpr double kDefaultTrustThreshold = 0.6;

inline TraversalBudget default_budget() { return TraversalBudget{2, 10, 100}; }
inline TraversalBudget d3_budget() { return TraversalBudget{2, 10, 50}; }

inline std::set<Relation> default_edge_allowlist() {
  return {Relation::Mentions, Relation::DependsOn, Relation::BelongsTo};
}

struct PipelineConfig {
  Variant variant = Variant::P3;
  std::size_t top_k = kDefaultTopK;
  TraversalBudget budget = default_budget();
  TraversalBudget tightened_budget = d3_budget();  // used when D3 is active
  std::set<Defense> defenses;
  double trust_threshold = kDefaultTrustThreshold;
  std::set<Relation> edge_allowlist = default_edge_allowlist();  // D2 only

  bool has(Defense d) const { return defenses.count(d) > 0; }

  static PipelineConfig for_variant(Variant v) {
    PipelineConfig c;
    c.variant = v;
    switch (v) {
      case Variant::P1:
      case Variant::P3:
        break;
      case Variant::P4:
        c.defenses = {Defense::D1};
        break;
      case Variant::P5:
        c.defenses = {Defense::D1, Defense::D2};
        break;
      case Variant::P6:
        c.defenses = {Defense::D1, Defense::D2, Defense::D3};
        break;
      case Variant::P7:
        c.defenses = {Defense::D1, Defense::D2, Defense::D3, Defense::D4};
        break;
      case Variant::P8:
        c.defenses = {Defense::D1, Defense::D2, Defense::D3, Defense::D4,
                      Defense::D5};
        break;
    }
    return c;
  }
};

// ---------------------------------------------------------------------------
// Defense primitives

// D1: a node survives only when its tenant is in the user's allowed set and
// its tier is within the user's clearance. Entity nodes carry an empty
// tenant, which is never in an allowed set, so they always fail.
inline bool d1_is_authorized(const GraphNode& node, const UserContext& user) {
  if (user.allowed_tenants.count(node.tenant) == 0) return false;
  return tier_level(node.sensitivity) <= tier_level(user.clearance);
}

inline double provenance_of(const ExpandedNode& n) {
  return n.node.provenance;
}
inline double provenance_of(const ContextItem& i) { return i.provenance; }

// D4: drop items whose provenance falls below the trust threshold.
template <typename Item>
inline void d4_trust_filter(std::vector<Item>& items, double threshold) {
  items.erase(std::remove_if(items.begin(), items.end(),
                             [&](const Item& it) {
                               return provenance_of(it) < threshold;
                             }),
              items.end());
}

// D5: merge-time re-check of tenant membership and clearance on the final
// context. Idempotent; applying it after D1 removes nothing new.
inline void d5_merge_filter(std::vector<ContextItem>& items,
                            const UserContext& user) {
  items.erase(std::remove_if(items.begin(), items.end(),
                             [&](const ContextItem& it) {
                               if (user.allowed_tenants.count(it.tenant) == 0) {
                                 return true;
                               }
                               return tier_level(it.sensitivity) >
                                      tier_level(user.clearance);
                             }),
              items.end());
}

// ---------------------------------------------------------------------------
// Pipeline

class Pipeline {
 public:
  // P1 runs with a null graph; every other variant requires one.
  Pipeline(const VectorIndex& index, const GraphStore* graph)
      : index_(index), graph_(graph) {}

  const VectorIndex& index() const { return index_; }
  const GraphStore* graph() const { return graph_; }

  QueryResult run_query(const Query& query, const PipelineConfig& config) const {
    if (config.variant != Variant::P1 && graph_ == nullptr) {
      throw StateError("graph store required for variant " +
                       variant_name(config.variant));
    }
    const auto t0 = std::chrono::steady_clock::now();

    const Embedding q = embed(query.text, index_.dimension());
    const auto seeds = index_.topk(q, config.top_k, query.user);

    std::vector<ContextItem> context;
    std::set<std::string> seen;
    for (const auto& s : seeds) {
      const VectorRecord* rec = index_.find(s.chunk_id);
      ContextItem item;
      item.node_id = s.chunk_id;
      item.kind = NodeKind::Chunk;
      item.tenant = rec->tenant;
      item.sensitivity = rec->sensitivity;
      item.provenance = rec->provenance;
      item.hop_depth = 0;
      item.source = ItemSource::Vector;
      item.serialized_text = rec->text;
      if (seen.insert(item.node_id).second) context.push_back(std::move(item));
    }

    if (config.variant != Variant::P1) {
      std::vector<std::string> seed_ids;
      for (const auto& s : seeds) {
        if (graph_->has_node(s.chunk_id)) seed_ids.push_back(s.chunk_id);
      }
      const TraversalBudget& budget =
          config.has(Defense::D3) ? config.tightened_budget : config.budget;
      std::optional<std::set<Relation>> allowlist;
      if (config.has(Defense::D2)) allowlist = config.edge_allowlist;

      auto expanded = graph_->expand(seed_ids, budget, allowlist);

      if (config.has(Defense::D1)) {
        expanded.erase(
            std::remove_if(expanded.begin(), expanded.end(),
                           [&](const ExpandedNode& n) {
                             return !d1_is_authorized(n.node, query.user);
                           }),
            expanded.end());
      }
      if (config.has(Defense::D4)) {
        d4_trust_filter(expanded, config.trust_threshold);
      }

      // Merge: vector items first, then expansion survivors in (hop, id)
      // order. Duplicates keep the smaller hop; vector copies sit at hop 0
      // and therefore always win over a re-discovered seed.
      for (const auto& n : expanded) {
        if (!seen.insert(n.node.node_id).second) continue;
        ContextItem item;
        item.node_id = n.node.node_id;
        item.kind = n.node.kind;
        item.tenant = n.node.tenant;
        item.sensitivity = n.node.sensitivity;
        item.provenance = n.node.provenance;
        item.hop_depth = n.hop_depth;
        item.source = ItemSource::Graph;
        item.serialized_text = serialize_node(n.node);
        context.push_back(std::move(item));
      }
    }

    if (config.has(Defense::D5)) {
      d5_merge_filter(context, query.user);
    }

    const auto t1 = std::chrono::steady_clock::now();

    QueryResult result;
    result.query_id = query.query_id;
    result.context = std::move(context);
    result.latency_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    for (const auto& item : result.context) {
      const auto verdict = sensitive(item, query.user);
      result.per_item_sensitive.push_back(verdict.sensitive);
      if (verdict.sensitive) {
        if (!result.pd.has_value() || item.hop_depth < *result.pd) {
          result.pd = item.hop_depth;
        }
      }
    }
    return result;
  }

 private:
  // Chunks serialize as their text; entities as name, category, and their
  // three smallest (relation, neighbor) edges.
  std::string serialize_node(const GraphNode& node) const {
    if (node.kind != NodeKind::Entity) return node.payload;
    std::string out = node.payload;
    if (!node.entity_category.empty()) {
      out += " (" + node.entity_category + ")";
    }
    const auto rels = graph_->top_relations(node.node_id, 3);
    if (!rels.empty()) {
      out += " ::";
      for (const auto& [rel, neighbor] : rels) {
        out += " " + relation_name(rel) + ":" + neighbor + ";";
      }
    }
    return out;
  }

  const VectorIndex& index_;
  const GraphStore* graph_;
};

}  // namespace pivotbench
