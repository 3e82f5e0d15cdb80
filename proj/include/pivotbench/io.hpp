#pragma once

// JSONL persistence for the artifacts that flow between CLI stages:
// documents, graph nodes and edges, and query sets. One JSON object per
// line, fixed key order, so identical inputs produce identical bytes.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pivotbench/core.hpp"

namespace pivotbench {

using Json = nlohmann::ordered_json;

inline void require_file(const std::string& path, const std::string& hint) {
  std::ifstream in(path);
  if (!in.good()) {
    throw StateError("missing required file: " + path + " (" + hint + ")");
  }
}

namespace detail {

inline std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out.good()) throw StateError("cannot open for writing: " + path);
  return out;
}

inline std::vector<Json> read_jsonl(const std::string& path,
                                    const std::string& hint) {
  require_file(path, hint);
  std::ifstream in(path);
  std::vector<Json> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw StateError(path + ":" + std::to_string(lineno) +
                       ": malformed JSON line: " + e.what());
    }
  }
  return rows;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Documents

inline Json document_to_json(const Document& doc) {
  Json entities = Json::array();
  for (const auto& e : doc.ground_truth_entities) {
    Json je;
    je["name"] = e.canonical_name;
    je["category"] = entity_category_name(e.category);
    je["bridge"] = e.bridge;
    if (e.bridge_category)
      je["bridge_category"] = bridge_category_name(*e.bridge_category);
    entities.push_back(je);
  }
  Json relations = Json::array();
  for (const auto& r : doc.ground_truth_relations) {
    Json jr;
    jr["src"] = r.src_entity;
    jr["relation"] = relation_name(r.relation);
    jr["dst"] = r.dst_entity;
    relations.push_back(jr);
  }
  Json j;
  j["doc_id"] = doc.doc_id;
  j["tenant"] = doc.tenant;
  j["sensitivity"] = tier_name(doc.sensitivity);
  j["genre"] = genre_name(doc.genre);
  j["provenance"] = doc.provenance;
  j["attack_tag"] = doc.attack_tag;
  j["entities"] = entities;
  j["relations"] = relations;
  j["text"] = doc.text;
  return j;
}

inline Document document_from_json(const Json& j) {
  Document doc;
  doc.doc_id = j.at("doc_id").get<std::string>();
  doc.tenant = j.at("tenant").get<std::string>();
  doc.sensitivity = tier_from_name(j.at("sensitivity").get<std::string>());
  doc.genre = genre_from_name(j.at("genre").get<std::string>());
  doc.provenance = j.at("provenance").get<double>();
  doc.attack_tag = j.at("attack_tag").get<std::string>();
  for (const auto& je : j.at("entities")) {
    EntitySpec e;
    e.canonical_name = je.at("name").get<std::string>();
    e.category = entity_category_from_name(je.at("category").get<std::string>());
    e.bridge = je.at("bridge").get<bool>();
    if (je.contains("bridge_category")) {
      e.bridge_category =
          bridge_category_from_name(je.at("bridge_category").get<std::string>());
    }
    doc.ground_truth_entities.push_back(std::move(e));
  }
  for (const auto& jr : j.at("relations")) {
    RelationTriple r;
    r.src_entity = jr.at("src").get<std::string>();
    r.relation = relation_from_name(jr.at("relation").get<std::string>());
    r.dst_entity = jr.at("dst").get<std::string>();
    doc.ground_truth_relations.push_back(std::move(r));
  }
  doc.text = j.at("text").get<std::string>();
  return doc;
}

inline void write_documents(const std::string& path,
                            const std::vector<Document>& docs) {
  auto out = detail::open_for_write(path);
  for (const auto& d : docs) out << document_to_json(d).dump() << "\n";
}

inline std::vector<Document> read_documents(const std::string& path,
                                            const std::string& hint) {
  std::vector<Document> docs;
  for (const auto& j : detail::read_jsonl(path, hint))
    docs.push_back(document_from_json(j));
  return docs;
}

// ---------------------------------------------------------------------------
// Graph nodes and edges

inline Json node_to_json(const GraphNode& n) {
  Json j;
  j["node_id"] = n.node_id;
  j["kind"] = node_kind_name(n.kind);
  j["tenant"] = n.tenant;
  j["sensitivity"] = tier_name(n.sensitivity);
  j["provenance"] = n.provenance;
  j["entity_category"] = n.entity_category;
  j["payload"] = n.payload;
  return j;
}

inline GraphNode node_from_json(const Json& j) {
  GraphNode n;
  n.node_id = j.at("node_id").get<std::string>();
  n.kind = node_kind_from_name(j.at("kind").get<std::string>());
  n.tenant = j.at("tenant").get<std::string>();
  n.sensitivity = tier_from_name(j.at("sensitivity").get<std::string>());
  n.provenance = j.at("provenance").get<double>();
  n.entity_category = j.at("entity_category").get<std::string>();
  n.payload = j.at("payload").get<std::string>();
  return n;
}

inline Json edge_to_json(const TypedEdge& e) {
  Json j;
  j["src"] = e.src;
  j["relation"] = relation_name(e.relation);
  j["dst"] = e.dst;
  return j;
}

inline TypedEdge edge_from_json(const Json& j) {
  TypedEdge e;
  e.src = j.at("src").get<std::string>();
  e.relation = relation_from_name(j.at("relation").get<std::string>());
  e.dst = j.at("dst").get<std::string>();
  return e;
}

inline void write_nodes(const std::string& path,
                        const std::vector<GraphNode>& nodes) {
  auto out = detail::open_for_write(path);
  for (const auto& n : nodes) out << node_to_json(n).dump() << "\n";
}

inline std::vector<GraphNode> read_nodes(const std::string& path,
                                         const std::string& hint) {
  std::vector<GraphNode> nodes;
  for (const auto& j : detail::read_jsonl(path, hint))
    nodes.push_back(node_from_json(j));
  return nodes;
}

inline void write_edges(const std::string& path,
                        const std::vector<TypedEdge>& edges) {
  auto out = detail::open_for_write(path);
  for (const auto& e : edges) out << edge_to_json(e).dump() << "\n";
}

inline std::vector<TypedEdge> read_edges(const std::string& path,
                                         const std::string& hint) {
  std::vector<TypedEdge> edges;
  for (const auto& j : detail::read_jsonl(path, hint))
    edges.push_back(edge_from_json(j));
  return edges;
}

// ---------------------------------------------------------------------------
// Queries

inline Json query_to_json(const Query& q) {
  Json j;
  j["query_id"] = q.query_id;
  j["kind"] = query_kind_name(q.kind);
  if (q.attack_subtype) j["attack"] = attack_kind_name(*q.attack_subtype);
  j["tenant"] = q.user.tenant;
  j["clearance"] = tier_name(q.user.clearance);
  Json allowed = Json::array();
  for (const auto& t : q.user.allowed_tenants) allowed.push_back(t);
  j["allowed_tenants"] = allowed;
  j["text"] = q.text;
  return j;
}

inline Query query_from_json(const Json& j) {
  Query q;
  q.query_id = j.at("query_id").get<std::string>();
  q.kind = query_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("attack"))
    q.attack_subtype = attack_kind_from_name(j.at("attack").get<std::string>());
  q.user.tenant = j.at("tenant").get<std::string>();
  q.user.clearance = tier_from_name(j.at("clearance").get<std::string>());
  for (const auto& t : j.at("allowed_tenants"))
    q.user.allowed_tenants.insert(t.get<std::string>());
  q.text = j.at("text").get<std::string>();
  return q;
}

inline void write_queries(const std::string& path,
                          const std::vector<Query>& queries) {
  auto out = detail::open_for_write(path);
  for (const auto& q : queries) out << query_to_json(q).dump() << "\n";
}

inline std::vector<Query> read_queries(const std::string& path,
                                       const std::string& hint) {
  std::vector<Query> queries;
  for (const auto& j : detail::read_jsonl(path, hint))
    queries.push_back(query_from_json(j));
  return queries;
}

}  // namespace pivotbench
