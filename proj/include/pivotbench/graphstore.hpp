#pragma once

// In-memory property graph with budgeted multi-source BFS expansion. All
// edges traverse undirected. Document container nodes are loaded for
// bookkeeping but are terminal: they are never collected into expansion
// results and traversal does not continue through them, so chunks reach other
// chunks only by pivoting through shared entity nodes.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pivotbench/core.hpp"
#include "pivotbench/rng.hpp"

namespace pivotbench {

struct TraversalBudget {
  int max_hops = 2;
  // Per-hop result cap, scaled by the number of seeds.
  std::size_t max_branching = 10;
  // Total collected nodes, seeds included.
  std::size_t max_total = 100;
};

struct ExpandedNode {
  GraphNode node;
  int hop_depth = 0;
};

struct GraphStats {
  std::size_t chunk_nodes = 0;
  std::size_t entity_nodes = 0;
  std::size_t document_nodes = 0;
  std::map<std::string, std::size_t> edges_by_relation;
  std::size_t total_edges = 0;
  // Entity nodes mentioned by chunks of two or more distinct tenants.
  std::size_t shared_entities = 0;
};

class GraphStore {
 public:
  GraphStore() = default;

  // Takes ownership of the node and edge lists. Every edge endpoint must
  // name a loaded node.
  void load(std::vector<GraphNode> nodes, std::vector<TypedEdge> edges) {
    nodes_.clear();
    adjacency_.clear();
    edges_.clear();
    for (auto& n : nodes) {
      auto id = n.node_id;
      if (!nodes_.emplace(std::move(id), std::move(n)).second) {
        throw ConfigError("duplicate node id in graph load");
      }
    }
    for (const auto& e : edges) {
      if (nodes_.find(e.src) == nodes_.end()) {
        throw ConfigError("edge references unknown node: " + e.src + " -[" +
                          relation_name(e.relation) + "]-> " + e.dst);
      }
      if (nodes_.find(e.dst) == nodes_.end()) {
        throw ConfigError("edge references unknown node: " + e.src + " -[" +
                          relation_name(e.relation) + "]-> " + e.dst);
      }
    }
    edges_ = std::move(edges);
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& e : edges_) {
      adjacency_[e.src].push_back(Adj{e.dst, e.relation});
      adjacency_[e.dst].push_back(Adj{e.src, e.relation});
    }
    for (auto& [id, adj] : adjacency_) {
      (void)id;
      std::sort(adj.begin(), adj.end(), [](const Adj& a, const Adj& b) {
        if (a.neighbor != b.neighbor) return a.neighbor < b.neighbor;
        return relation_name(a.relation) < relation_name(b.relation);
      });
    }
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<TypedEdge>& edges() const { return edges_; }

  const GraphNode& node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
      throw ConfigError("unknown node id: " + id);
    }
    return it->second;
  }

  bool has_node(const std::string& id) const {
    return nodes_.find(id) != nodes_.end();
  }

  // Budgeted multi-source BFS. Hop depths are true shortest distances from
  // the seed set over edges whose relation is in the allowlist (absent
  // allowlist: every relation except the document-container ones). Nodes are
  // collected in (hop, node_id) order until max_total (seeds included); each
  // hop group is then truncated to its max_branching * seed-count smallest
  // ids. Document nodes are neither collected nor expanded through.
  std::vector<ExpandedNode> expand(
      const std::vector<std::string>& seed_ids, const TraversalBudget& budget,
      const std::optional<std::set<Relation>>& allowlist = std::nullopt) const {
    if (budget.max_hops < 0) throw ConfigError("max_hops must be >= 0");
    std::set<Relation> allowed;
    if (allowlist.has_value()) {
      allowed = *allowlist;
    } else {
      for (Relation r : kAllRelations) {
        if (r != Relation::Contains && r != Relation::BelongsTo) {
          allowed.insert(r);
        }
      }
    }

    std::map<std::string, int> dist;
    std::vector<std::string> frontier;
    for (const auto& id : seed_ids) {
      auto it = nodes_.find(id);
      if (it == nodes_.end()) {
        throw ConfigError("unknown expansion seed: " + id);
      }
      if (dist.emplace(id, 0).second) frontier.push_back(id);
    }
    std::sort(frontier.begin(), frontier.end());

    std::vector<std::vector<std::string>> by_hop;  // collectable ids per hop
    by_hop.push_back(frontier);

    for (int hop = 0; hop < budget.max_hops && !frontier.empty(); ++hop) {
      std::vector<std::string> next;
      for (const auto& id : frontier) {
        const GraphNode& n = nodes_.at(id);
        if (n.kind == NodeKind::Doc) continue;  // terminal container
        auto adj_it = adjacency_.find(id);
        if (adj_it == adjacency_.end()) continue;
        for (const auto& adj : adj_it->second) {
          if (allowed.count(adj.relation) == 0) continue;
          if (dist.emplace(adj.neighbor, hop + 1).second) {
            next.push_back(adj.neighbor);
          }
        }
      }
      std::sort(next.begin(), next.end());
      by_hop.push_back(next);
      frontier = std::move(next);
    }

    // Collect in (hop, id) order up to the total budget, skipping documents.
    std::vector<std::vector<std::string>> collected(by_hop.size());
    std::size_t total = 0;
    for (std::size_t hop = 0; hop < by_hop.size() && total < budget.max_total;
         ++hop) {
      for (const auto& id : by_hop[hop]) {
        if (total >= budget.max_total) break;
        if (nodes_.at(id).kind == NodeKind::Doc) continue;
        collected[hop].push_back(id);
        ++total;
      }
    }

    const std::size_t seed_count = by_hop.empty() ? 0 : by_hop[0].size();
    const std::size_t per_hop_cap = budget.max_branching * seed_count;
    std::vector<ExpandedNode> out;
    for (std::size_t hop = 0; hop < collected.size(); ++hop) {
      auto& group = collected[hop];
      if (group.size() > per_hop_cap) group.resize(per_hop_cap);
      for (const auto& id : group) {
        out.push_back(ExpandedNode{nodes_.at(id), static_cast<int>(hop)});
      }
    }
    return out;
  }

  void relabel_sensitivity(const std::string& node_id, Tier tier) {
    auto it = nodes_.find(node_id);
    if (it == nodes_.end()) throw ConfigError("unknown node id: " + node_id);
    it->second.sensitivity = tier;
  }

  void relabel_tenant(const std::string& node_id, const std::string& tenant) {
    auto it = nodes_.find(node_id);
    if (it == nodes_.end()) throw ConfigError("unknown node id: " + node_id);
    it->second.tenant = tenant;
  }

  bool are_adjacent(const std::string& a, const std::string& b) const {
    auto it = adjacency_.find(a);
    if (it == adjacency_.end()) return false;
    for (const auto& adj : it->second) {
      if (adj.neighbor == b) return true;
    }
    return false;
  }

  // Up to `limit` adjacent edges of a node, by smallest (relation, neighbor)
  // key; used to serialize entity items compactly.
  std::vector<std::pair<Relation, std::string>> top_relations(
      const std::string& node_id, std::size_t limit) const {
    auto adj_it = adjacency_.find(node_id);
    std::vector<std::pair<Relation, std::string>> out;
    if (adj_it == adjacency_.end()) return out;
    for (const auto& adj : adj_it->second) {
      out.emplace_back(adj.relation, adj.neighbor);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) {
                if (a.first != b.first) {
                  return relation_name(a.first) < relation_name(b.first);
                }
                return a.second < b.second;
              });
    if (out.size() > limit) out.resize(limit);
    return out;
  }

  std::vector<std::string> sorted_node_ids() const {
    std::vector<std::string> out;
    out.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) {
      (void)n;
      out.push_back(id);
    }
    return out;
  }

  // Retrievable = chunk and entity nodes (documents are containers only).
  std::vector<std::string> retrievable_node_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, n] : nodes_) {
      if (n.kind != NodeKind::Doc) out.push_back(id);
    }
    return out;
  }

  GraphStats stats() const {
    GraphStats s;
    std::map<std::string, std::set<std::string>> entity_tenants;
    for (const auto& [id, n] : nodes_) {
      (void)id;
      switch (n.kind) {
        case NodeKind::Chunk: ++s.chunk_nodes; break;
        case NodeKind::Entity: ++s.entity_nodes; break;
        case NodeKind::Doc: ++s.document_nodes; break;
      }
    }
    for (const auto& e : edges_) {
      ++s.edges_by_relation[relation_name(e.relation)];
      ++s.total_edges;
      if (e.relation == Relation::Mentions) {
        const auto& src = nodes_.at(e.src);
        const auto& dst = nodes_.at(e.dst);
        if (src.kind == NodeKind::Chunk && dst.kind == NodeKind::Entity) {
          entity_tenants[e.dst].insert(src.tenant);
        }
      }
    }
    for (const auto& [ent, tenants] : entity_tenants) {
      (void)ent;
      if (tenants.size() >= 2) ++s.shared_entities;
    }
    return s;
  }

  // Order-independent digest of the full node and edge state; used to verify
  // clean/poisoned isolation between experiments.
  std::uint64_t content_hash() const {
    std::uint64_t h = kFnvOffset;
    for (const auto& [id, n] : nodes_) {
      (void)id;
      h = fnv1a64(n.node_id, h);
      h = fnv1a64(node_kind_name(n.kind), h);
      h = fnv1a64(n.tenant, h);
      h = fnv1a64(tier_name(n.sensitivity), h);
      h = fnv1a64(std::to_string(n.provenance), h);
      h = fnv1a64(n.payload, h);
    }
    for (const auto& e : edges_) {
      h = fnv1a64(e.src, h);
      h = fnv1a64(relation_name(e.relation), h);
      h = fnv1a64(e.dst, h);
    }
    return h;
  }

 private:
  struct Adj {
    std::string neighbor;
    Relation relation;
  };

  std::map<std::string, GraphNode> nodes_;
  std::map<std::string, std::vector<Adj>> adjacency_;
  std::vector<TypedEdge> edges_;
};

inline GraphStore build_graph(std::vector<GraphNode> nodes,
                              std::vector<TypedEdge> edges) {
  GraphStore g;
  g.load(std::move(nodes), std::move(edges));
  return g;
}

}  // namespace pivotbench
