#pragma once

// Shared domain vocabulary for the pivotbench testbed: tenants, sensitivity
// tiers, entities, documents, chunks, graph nodes/edges, users, queries, and
// retrieval context items. Module headers build on these types.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pivotbench {

// ---------------------------------------------------------------------------
// Errors

// Invalid configuration supplied by the caller (bad mix, bad rate, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An operation was attempted in a state that forbids it (frozen index,
// missing prerequisite file, ...).
struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A clean/poisoned isolation check failed: state leaked across experiments.
struct ContaminationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Sensitivity tiers

enum class Tier : int {
  Public = 0,
  Internal = 1,
  Confidential = 2,
  Restricted = 3,
};

inline constexpr std::array<Tier, 4> kAllTiers = {
    Tier::Public, Tier::Internal, Tier::Confidential, Tier::Restricted};

inline int tier_level(Tier t) { return static_cast<int>(t); }

inline std::string tier_name(Tier t) {
  switch (t) {
    case Tier::Public: return "PUBLIC";
    case Tier::Internal: return "INTERNAL";
    case Tier::Confidential: return "CONFIDENTIAL";
    case Tier::Restricted: return "RESTRICTED";
  }
  throw ConfigError("unknown tier value");
}

inline Tier tier_from_level(int level) {
  if (level < 0 || level > 3) {
    throw ConfigError("sensitivity level out of range: " +
                      std::to_string(level));
  }
  return static_cast<Tier>(level);
}

inline Tier tier_from_name(std::string_view name) {
  for (Tier t : kAllTiers) {
    if (tier_name(t) == name) return t;
  }
  throw ConfigError("unknown tier name: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Tenants

inline constexpr std::array<std::string_view, 4> kTenants = {
    "acme_engineering", "globex_finance", "initech_hr", "umbrella_security"};

inline bool is_known_tenant(std::string_view tenant) {
  return std::find(kTenants.begin(), kTenants.end(), tenant) != kTenants.end();
}

// ---------------------------------------------------------------------------
// Entities

enum class EntityCategory {
  System,
  Technology,
  Project,
  Vendor,
  Account,
  Regulation,
  Department,
  Benefit,
  Person,
  Cve,
  Tool,
  Framework,
  Infrastructure,
  Compliance,
};

inline std::string entity_category_name(EntityCategory c) {
  switch (c) {
    case EntityCategory::System: return "system";
    case EntityCategory::Technology: return "technology";
    case EntityCategory::Project: return "project";
    case EntityCategory::Vendor: return "vendor";
    case EntityCategory::Account: return "account";
    case EntityCategory::Regulation: return "regulation";
    case EntityCategory::Department: return "department";
    case EntityCategory::Benefit: return "benefit";
    case EntityCategory::Person: return "person";
    case EntityCategory::Cve: return "cve";
    case EntityCategory::Tool: return "tool";
    case EntityCategory::Framework: return "framework";
    case EntityCategory::Infrastructure: return "infrastructure";
    case EntityCategory::Compliance: return "compliance";
  }
  throw ConfigError("unknown entity category");
}

inline EntityCategory entity_category_from_name(std::string_view name) {
  static const std::array<EntityCategory, 14> all = {
      EntityCategory::System,     EntityCategory::Technology,
      EntityCategory::Project,    EntityCategory::Vendor,
      EntityCategory::Account,    EntityCategory::Regulation,
      EntityCategory::Department, EntityCategory::Benefit,
      EntityCategory::Person,     EntityCategory::Cve,
      EntityCategory::Tool,       EntityCategory::Framework,
      EntityCategory::Infrastructure, EntityCategory::Compliance};
  for (EntityCategory c : all) {
    if (entity_category_name(c) == name) return c;
  }
  throw ConfigError("unknown entity category: " + std::string(name));
}

// Cross-tenant connector classes. Bridge specs carry exactly one of these.
enum class BridgeCategory {
  Vendor,
  Infrastructure,
  Personnel,
  Compliance,
  Project,
};

inline constexpr std::array<BridgeCategory, 5> kAllBridgeCategories = {
    BridgeCategory::Vendor, BridgeCategory::Infrastructure,
    BridgeCategory::Personnel, BridgeCategory::Compliance,
    BridgeCategory::Project};

inline std::string bridge_category_name(BridgeCategory c) {
  switch (c) {
    case BridgeCategory::Vendor: return "vendor";
    case BridgeCategory::Infrastructure: return "infrastructure";
    case BridgeCategory::Personnel: return "personnel";
    case BridgeCategory::Compliance: return "compliance";
    case BridgeCategory::Project: return "project";
  }
  throw ConfigError("unknown bridge category");
}

inline BridgeCategory bridge_category_from_name(std::string_view name) {
  for (BridgeCategory c : kAllBridgeCategories) {
    if (bridge_category_name(c) == name) return c;
  }
  throw ConfigError("unknown bridge category: " + std::string(name));
}

struct EntitySpec {
  std::string canonical_name;
  EntityCategory category = EntityCategory::System;
  bool bridge = false;
  std::optional<BridgeCategory> bridge_category;

  EntitySpec() = default;
  EntitySpec(std::string name, EntityCategory cat)
      : canonical_name(std::move(name)), category(cat) {}
  EntitySpec(std::string name, EntityCategory cat, BridgeCategory bc)
      : canonical_name(std::move(name)),
        category(cat),
        bridge(true),
        bridge_category(bc) {}
};

// Entity identity is the canonical name; graph node ids carry this prefix so
// chunks ("doc_...") sort ahead of entities within an expansion hop group.
inline constexpr std::string_view kEntityIdPrefix = "ent::";

inline std::string entity_node_id(std::string_view canonical_name) {
  return std::string(kEntityIdPrefix) + std::string(canonical_name);
}

inline bool is_entity_node_id(std::string_view node_id) {
  return node_id.substr(0, kEntityIdPrefix.size()) == kEntityIdPrefix;
}

inline std::string entity_name_from_node_id(std::string_view node_id) {
  if (!is_entity_node_id(node_id)) {
    throw ConfigError("not an entity node id: " + std::string(node_id));
  }
  return std::string(node_id.substr(kEntityIdPrefix.size()));
}

// ---------------------------------------------------------------------------
// Relations and edges

enum class Relation {
  Mentions,
  DependsOn,
  OwnedBy,
  BelongsTo,
  Contains,
  DerivedFrom,
  RelatedTo,
};

inline constexpr std::array<Relation, 7> kAllRelations = {
    Relation::Mentions,  Relation::DependsOn,   Relation::OwnedBy,
    Relation::BelongsTo, Relation::Contains,    Relation::DerivedFrom,
    Relation::RelatedTo};

inline std::string relation_name(Relation r) {
  switch (r) {
    case Relation::Mentions: return "MENTIONS";
    case Relation::DependsOn: return "DEPENDS_ON";
    case Relation::OwnedBy: return "OWNED_BY";
    case Relation::BelongsTo: return "BELONGS_TO";
    case Relation::Contains: return "CONTAINS";
    case Relation::DerivedFrom: return "DERIVED_FROM";
    case Relation::RelatedTo: return "RELATED_TO";
  }
  throw ConfigError("unknown relation");
}

inline Relation relation_from_name(std::string_view name) {
  for (Relation r : kAllRelations) {
    if (relation_name(r) == name) return r;
  }
  throw ConfigError("unknown relation name: " + std::string(name));
}

struct TypedEdge {
  std::string src;
  Relation relation = Relation::RelatedTo;
  std::string dst;

  friend bool operator==(const TypedEdge& a, const TypedEdge& b) {
    return a.src == b.src && a.relation == b.relation && a.dst == b.dst;
  }
  friend bool operator<(const TypedEdge& a, const TypedEdge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.relation != b.relation) {
      return relation_name(a.relation) < relation_name(b.relation);
    }
    return a.dst < b.dst;
  }
};

// Entity-to-entity ground-truth relation recorded on a document.
struct RelationTriple {
  std::string src_entity;
  Relation relation = Relation::RelatedTo;
  std::string dst_entity;
};

// ---------------------------------------------------------------------------
// Documents and chunks

enum class Genre { Architecture, Policy, StatusReport };

inline constexpr std::array<Genre, 3> kAllGenres = {
    Genre::Architecture, Genre::Policy, Genre::StatusReport};

inline std::string genre_name(Genre g) {
  switch (g) {
    case Genre::Architecture: return "architecture";
    case Genre::Policy: return "policy";
    case Genre::StatusReport: return "status_report";
  }
  throw ConfigError("unknown genre");
}

inline Genre genre_from_name(std::string_view name) {
  for (Genre g : kAllGenres) {
    if (genre_name(g) == name) return g;
  }
  throw ConfigError("unknown genre name: " + std::string(name));
}

struct Document {
  std::string doc_id;
  std::string tenant;
  Tier sensitivity = Tier::Public;
  Genre genre = Genre::Architecture;
  std::string text;
  std::vector<EntitySpec> ground_truth_entities;
  std::vector<RelationTriple> ground_truth_relations;
  double provenance = 0.9;
  // Empty for organic documents; attack kind tag ("A1".."A7") for payloads.
  std::string attack_tag;
};

struct Chunk {
  std::string chunk_id;
  std::string doc_id;
  std::string tenant;
  Tier sensitivity = Tier::Public;
  double provenance = 0.9;
  std::string text;
  std::size_t token_begin = 0;  // inclusive token index in the document
  std::size_t token_end = 0;    // exclusive
  std::vector<std::string> mentions;  // entity node ids, first-occurrence order
};

// ---------------------------------------------------------------------------
// Graph nodes

enum class NodeKind { Chunk, Entity, Doc };

inline std::string node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Chunk: return "chunk";
    case NodeKind::Entity: return "entity";
    case NodeKind::Doc: return "document";
  }
  throw ConfigError("unknown node kind");
}

inline NodeKind node_kind_from_name(std::string_view name) {
  for (NodeKind k : {NodeKind::Chunk, NodeKind::Entity, NodeKind::Doc}) {
    if (node_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown node kind: " + std::string(name));
}

struct GraphNode {
  std::string node_id;
  NodeKind kind = NodeKind::Chunk;
  // Entity nodes carry an empty tenant: they belong to the shared namespace.
  std::string tenant;
  Tier sensitivity = Tier::Public;
  double provenance = 1.0;
  // Chunk text for chunk nodes, canonical name for entities, id for documents.
  std::string payload;
  // Category label for entity nodes ("vendor", "person", ...); empty else.
  std::string entity_category;
};

// ---------------------------------------------------------------------------
// Users and queries

struct UserContext {
  std::string tenant;
  Tier clearance = Tier::Internal;
  std::set<std::string> allowed_tenants;

  static UserContext make(std::string tenant, Tier clearance) {
    UserContext u;
    u.allowed_tenants.insert(tenant);
    u.tenant = std::move(tenant);
    u.clearance = clearance;
    return u;
  }
};

enum class QueryKind { Benign, Adversarial };

inline std::string query_kind_name(QueryKind k) {
  return k == QueryKind::Benign ? "benign" : "adversarial";
}

inline QueryKind query_kind_from_name(std::string_view name) {
  if (name == "benign") return QueryKind::Benign;
  if (name == "adversarial") return QueryKind::Adversarial;
  throw ConfigError("unknown query kind: " + std::string(name));
}

enum class AttackKind { A1, A2, A3, A4, A5, A6, A7 };

inline constexpr std::array<AttackKind, 7> kAllAttackKinds = {
    AttackKind::A1, AttackKind::A2, AttackKind::A3, AttackKind::A4,
    AttackKind::A5, AttackKind::A6, AttackKind::A7};

inline std::string attack_kind_name(AttackKind k) {
  switch (k) {
    case AttackKind::A1: return "A1";
    case AttackKind::A2: return "A2";
    case AttackKind::A3: return "A3";
    case AttackKind::A4: return "A4";
    case AttackKind::A5: return "A5";
    case AttackKind::A6: return "A6";
    case AttackKind::A7: return "A7";
  }
  throw ConfigError("unknown attack kind");
}

inline AttackKind attack_kind_from_name(std::string_view name) {
  for (AttackKind k : kAllAttackKinds) {
    if (attack_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown attack kind: " + std::string(name));
}

struct Query {
  std::string query_id;
  std::string text;
  UserContext user;
  QueryKind kind = QueryKind::Benign;
  std::optional<AttackKind> attack_subtype;
};

// ---------------------------------------------------------------------------
// Retrieval context

enum class ItemSource { Vector, Graph };

inline std::string item_source_name(ItemSource s) {
  return s == ItemSource::Vector ? "vector" : "graph";
}

struct ContextItem {
  std::string node_id;
  NodeKind kind = NodeKind::Chunk;
  std::string tenant;
  Tier sensitivity = Tier::Public;
  double provenance = 1.0;
  int hop_depth = 0;  // 0 for vector-sourced items and expansion seeds
  ItemSource source = ItemSource::Vector;
  std::string serialized_text;
};

struct QueryResult {
  std::string query_id;
  std::vector<ContextItem> context;
  double latency_ms = 0.0;
  // Minimum hop depth over leaked items; absent when the context is clean.
  std::optional<int> pd;
  std::vector<bool> per_item_sensitive;  // parallel to context
};

}  // namespace pivotbench
