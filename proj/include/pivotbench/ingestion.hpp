#pragma once

// Ingestion pipeline: sliding-window chunking, dictionary entity extraction,
// two-pass relation extraction, hashed bag-of-words embeddings, and assembly
// of the chunk/entity/document node and edge lists.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pivotbench/core.hpp"
#include "pivotbench/rng.hpp"
#include "pivotbench/text.hpp"

namespace pivotbench {

inline constexpr std::size_t kChunkWindowTokens = 300;
inline constexpr std::size_t kChunkStrideTokens = 250;  // 50-token overlap
inline constexpr std::size_t kMinEmbeddingDim = 16;
inline constexpr std::size_t kDefaultEmbeddingDim = 128;
inline constexpr std::size_t kRelatedToCapPerChunk = 5;

struct IngestOptions {
  std::size_t embedding_dim = kDefaultEmbeddingDim;
  // Also extract capitalized bigrams as low-trust generic entities.
  bool generic_entities = false;
};

// ---------------------------------------------------------------------------
// Chunking

inline std::string chunk_id_for(const std::string& doc_id, std::size_t ord) {
  return doc_id + "::c" + std::to_string(ord);
}

// Fixed token windows with overlap; the final window may be shorter. Every
// token of the document lands in at least one chunk.
inline std::vector<Chunk> chunk_document(const Document& doc) {
  const auto tokens = tokenize(doc.text);
  if (tokens.empty()) {
    throw ConfigError("document has no tokens: " + doc.doc_id);
  }
  std::vector<Chunk> chunks;
  std::size_t ord = 0;
  for (std::size_t start = 0;; start += kChunkStrideTokens, ++ord) {
    const std::size_t end = std::min(start + kChunkWindowTokens, tokens.size());
    Chunk c;
    c.chunk_id = chunk_id_for(doc.doc_id, ord);
    c.doc_id = doc.doc_id;
    c.tenant = doc.tenant;
    c.sensitivity = doc.sensitivity;
    c.provenance = doc.provenance;
    c.token_begin = start;
    c.token_end = end;
    const std::size_t text_begin = tokens[start].begin;
    const std::size_t text_end = tokens[end - 1].end;
    c.text = doc.text.substr(text_begin, text_end - text_begin);
    chunks.push_back(std::move(c));
    if (end == tokens.size()) break;
  }
  return chunks;
}

// ---------------------------------------------------------------------------
// Entity extraction

namespace detail {

inline bool boundary_before(std::string_view text, std::size_t pos) {
  if (pos == 0) return true;
  char prev = text[pos - 1];
  return !is_word_char(prev) && prev != '-';
}

inline bool boundary_after(std::string_view text, std::size_t end) {
  if (end >= text.size()) return true;
  char next = text[end];
  return !is_word_char(next) && next != '-';
}

struct DictMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t dict_index = 0;
};

// All word-boundary occurrences of dictionary names, case-insensitive.
inline std::vector<DictMatch> find_matches(
    const std::string& lower_text, const std::vector<std::string>& lower_names) {
  std::vector<DictMatch> matches;
  for (std::size_t d = 0; d < lower_names.size(); ++d) {
    const std::string& name = lower_names[d];
    if (name.empty()) continue;
    std::size_t from = 0;
    while (true) {
      std::size_t pos = lower_text.find(name, from);
      if (pos == std::string::npos) break;
      std::size_t end = pos + name.size();
      if (boundary_before(lower_text, pos) && boundary_after(lower_text, end)) {
        matches.push_back(DictMatch{pos, end, d});
      }
      from = pos + 1;
    }
  }
  return matches;
}

}  // namespace detail

// Distinct entity node ids mentioned in the text, in first-occurrence order.
// Overlapping candidates resolve longest-match first, left to right; each
// entity is reported once per chunk.
inline std::vector<std::string> extract_entities(
    std::string_view chunk_text, const std::vector<EntitySpec>& dictionary) {
  const std::string lower = to_lower(chunk_text);
  std::vector<std::string> lower_names;
  lower_names.reserve(dictionary.size());
  for (const auto& e : dictionary) lower_names.push_back(to_lower(e.canonical_name));

  auto matches = detail::find_matches(lower, lower_names);
  std::sort(matches.begin(), matches.end(),
            [](const detail::DictMatch& a, const detail::DictMatch& b) {
              if (a.begin != b.begin) return a.begin < b.begin;
              if (a.end != b.end) return a.end > b.end;  // longest first
              return a.dict_index < b.dict_index;
            });

  std::vector<std::string> out;
  std::set<std::string> seen;
  std::size_t consumed_until = 0;
  for (const auto& m : matches) {
    if (m.begin < consumed_until) continue;
    consumed_until = m.end;
    const std::string& name = dictionary[m.dict_index].canonical_name;
    if (seen.insert(name).second) out.push_back(entity_node_id(name));
  }
  return out;
}

// Capitalized-bigram fallback ("generic" entities) used only when the
// corresponding option is on; yields low-trust shared nodes.
inline std::vector<std::string> extract_generic_entities(
    std::string_view chunk_text) {
  auto tokens = tokenize(chunk_text);
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto capitalized = [](const std::string& t) {
    return !t.empty() && std::isupper(static_cast<unsigned char>(t[0])) != 0 &&
           t.size() > 1;
  };
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (capitalized(tokens[i].text) && capitalized(tokens[i + 1].text)) {
      std::string name = tokens[i].text + " " + tokens[i + 1].text;
      if (seen.insert(name).second) {
        out.push_back(entity_node_id("gen::" + name));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation extraction

namespace detail {

struct TriggerPhrase {
  std::string_view phrase;
  Relation relation;
};

inline constexpr std::array<TriggerPhrase, 5> kTriggers = {{
    {"depends on", Relation::DependsOn},
    {"owned by", Relation::OwnedBy},
    {"belongs to", Relation::BelongsTo},
    {"contains", Relation::Contains},
    {"derived from", Relation::DerivedFrom},
}};

struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline std::vector<SentenceSpan> split_sentences(std::string_view text) {
  std::vector<SentenceSpan> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.' || c == '?' || c == '!') {
      out.push_back(SentenceSpan{start, i + 1});
      start = i + 1;
    }
  }
  if (start < text.size()) out.push_back(SentenceSpan{start, text.size()});
  return out;
}

// First word-boundary occurrence of an entity name inside [begin, end), on
// the lowercased text; npos when absent.
inline std::size_t find_in_span(const std::string& lower_text,
                                const std::string& lower_name,
                                std::size_t begin, std::size_t end) {
  std::size_t from = begin;
  while (from < end) {
    std::size_t pos = lower_text.find(lower_name, from);
    if (pos == std::string::npos || pos + lower_name.size() > end) {
      return std::string::npos;
    }
    if (boundary_before(lower_text, pos) &&
        boundary_after(lower_text, pos + lower_name.size())) {
      return pos;
    }
    from = pos + 1;
  }
  return std::string::npos;
}

}  // namespace detail

// Entity-to-entity edges for one chunk. Pass 1 keeps the parent document's
// ground-truth relations whose endpoints are both mentioned here. Pass 2
// scans sentences for trigger phrases between mention pairs. Remaining
// co-mentioned pairs fall back to RELATED_TO, capped per chunk in mention
// order.
inline std::vector<TypedEdge> extract_relations(const Chunk& chunk,
                                                const Document& parent) {
  if (chunk.doc_id != parent.doc_id) {
    throw ConfigError("chunk/document mismatch: " + chunk.chunk_id);
  }
  std::vector<std::string> names;  // canonical, mention order
  for (const auto& id : chunk.mentions) {
    if (is_entity_node_id(id)) names.push_back(entity_name_from_node_id(id));
  }
  std::set<std::string> mentioned(names.begin(), names.end());

  std::set<TypedEdge> edges;
  auto add_edge = [&](const std::string& a, Relation r, const std::string& b) {
    edges.insert(TypedEdge{entity_node_id(a), r, entity_node_id(b)});
  };
  // Unordered pair already connected by some typed edge?
  auto connected = [&](const std::string& a, const std::string& b) {
    for (const auto& e : edges) {
      if ((e.src == entity_node_id(a) && e.dst == entity_node_id(b)) ||
          (e.src == entity_node_id(b) && e.dst == entity_node_id(a))) {
        return true;
      }
    }
    return false;
  };

  for (const auto& rel : parent.ground_truth_relations) {
    if (mentioned.count(rel.src_entity) && mentioned.count(rel.dst_entity)) {
      add_edge(rel.src_entity, rel.relation, rel.dst_entity);
    }
  }

  const std::string lower = to_lower(chunk.text);
  std::map<std::string, std::string> lower_of;
  for (const auto& n : names) lower_of[n] = to_lower(n);

  for (const auto& span : detail::split_sentences(lower)) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::size_t pa = detail::find_in_span(lower, lower_of[names[i]],
                                            span.begin, span.end);
      if (pa == std::string::npos) continue;
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (i == j) continue;
        std::size_t pb = detail::find_in_span(lower, lower_of[names[j]],
                                              span.begin, span.end);
        if (pb == std::string::npos || pb <= pa) continue;
        const std::size_t gap_begin = pa + lower_of[names[i]].size();
        for (const auto& trig : detail::kTriggers) {
          std::size_t tp = lower.find(std::string(trig.phrase), gap_begin);
          if (tp != std::string::npos && tp + trig.phrase.size() <= pb) {
            add_edge(names[i], trig.relation, names[j]);
            break;
          }
        }
      }
    }
  }

  std::size_t fallback_used = 0;
  for (std::size_t i = 0; i < names.size() && fallback_used < kRelatedToCapPerChunk;
       ++i) {
    for (std::size_t j = i + 1;
         j < names.size() && fallback_used < kRelatedToCapPerChunk; ++j) {
      if (connected(names[i], names[j])) continue;
      add_edge(names[i], Relation::RelatedTo, names[j]);
      ++fallback_used;
    }
  }

  return std::vector<TypedEdge>(edges.begin(), edges.end());
}

// ---------------------------------------------------------------------------
// Embedding

struct Embedding {
  std::vector<double> values;

  double dot(const Embedding& other) const {
    if (values.size() != other.values.size()) {
      throw ConfigError("embedding dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      s += values[i] * other.values[i];
    }
    return s;
  }

  double norm() const { return std::sqrt(dot(*this)); }

  bool is_zero() const {
    for (double v : values) {
      if (v != 0.0) return false;
    }
    return true;
  }
};

// Hashed bag-of-words: each lowercased token adds +/-1 (sign from its hash)
// at hash(token) mod dim; the sum is L2-normalized. Order-insensitive by
// construction. Empty text embeds to the zero vector.
inline Embedding embed(std::string_view text, std::size_t dim) {
  if (dim < kMinEmbeddingDim) {
    throw ConfigError("embedding dimension must be >= " +
                      std::to_string(kMinEmbeddingDim));
  }
  Embedding e;
  e.values.assign(dim, 0.0);
  for (const auto& tok : tokenize(text)) {
    const std::uint64_t h = fnv1a64(to_lower(tok.text));
    const std::size_t idx = static_cast<std::size_t>(h % dim);
    const double sign = ((h >> 63) & 1ULL) ? -1.0 : 1.0;
    e.values[idx] += sign;
  }
  const double n = e.norm();
  if (n > 0.0) {
    for (double& v : e.values) v /= n;
  }
  return e;
}

inline double cosine(const Embedding& a, const Embedding& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

// ---------------------------------------------------------------------------
// Corpus ingestion

struct IngestResult {
  std::vector<Chunk> chunks;
  std::vector<GraphNode> nodes;  // sorted by node_id
  std::vector<TypedEdge> edges;  // sorted (src, relation, dst), deduplicated
};

// Chunks every document, extracts mentions and relations, and emits the node
// and edge lists. Entity nodes exist only for entities actually mentioned and
// always carry an empty tenant. Structural edges: document CONTAINS chunk,
// chunk BELONGS_TO document, chunk MENTIONS entity.
inline IngestResult ingest_corpus(const std::vector<Document>& docs,
                                  const std::vector<EntitySpec>& dictionary,
                                  const IngestOptions& options = {}) {
  if (options.embedding_dim < kMinEmbeddingDim) {
    throw ConfigError("embedding dimension must be >= " +
                      std::to_string(kMinEmbeddingDim));
  }
  std::map<std::string, EntitySpec> spec_by_name;
  for (const auto& e : dictionary) spec_by_name.emplace(e.canonical_name, e);

  IngestResult result;
  std::map<std::string, GraphNode> nodes;
  std::set<TypedEdge> edges;

  for (const auto& doc : docs) {
    GraphNode dnode;
    dnode.node_id = doc.doc_id;
    dnode.kind = NodeKind::Doc;
    dnode.tenant = doc.tenant;
    dnode.sensitivity = doc.sensitivity;
    dnode.provenance = doc.provenance;
    dnode.payload = doc.doc_id;
    nodes.emplace(dnode.node_id, dnode);

    for (Chunk& chunk : chunk_document(doc)) {
      chunk.mentions = extract_entities(chunk.text, dictionary);
      if (options.generic_entities) {
        for (auto& id : extract_generic_entities(chunk.text)) {
          chunk.mentions.push_back(std::move(id));
        }
      }

      GraphNode cnode;
      cnode.node_id = chunk.chunk_id;
      cnode.kind = NodeKind::Chunk;
      cnode.tenant = chunk.tenant;
      cnode.sensitivity = chunk.sensitivity;
      cnode.provenance = chunk.provenance;
      cnode.payload = chunk.text;
      nodes.emplace(cnode.node_id, cnode);

      edges.insert(TypedEdge{doc.doc_id, Relation::Contains, chunk.chunk_id});
      edges.insert(TypedEdge{chunk.chunk_id, Relation::BelongsTo, doc.doc_id});

      for (const auto& mention : chunk.mentions) {
        auto it = nodes.find(mention);
        if (it == nodes.end()) {
          GraphNode enode;
          enode.node_id = mention;
          enode.kind = NodeKind::Entity;
          enode.tenant = "";  // shared namespace: never tenant-scoped
          enode.sensitivity = Tier::Public;
          const std::string name = entity_name_from_node_id(mention);
          auto sit = spec_by_name.find(name);
          if (sit != spec_by_name.end()) {
            enode.provenance = 1.0;
            enode.entity_category = entity_category_name(sit->second.category);
          } else {
            enode.provenance = 0.4;
            enode.entity_category = "generic";
          }
          enode.payload = name;
          nodes.emplace(enode.node_id, enode);
        }
        edges.insert(TypedEdge{chunk.chunk_id, Relation::Mentions, mention});
      }

      for (auto& e : extract_relations(chunk, doc)) {
        // Relation endpoints that were only generic mentions still resolve to
        // entity nodes created above.
        edges.insert(std::move(e));
      }

      result.chunks.push_back(std::move(chunk));
    }
  }

  result.nodes.reserve(nodes.size());
  for (auto& [id, node] : nodes) {
    (void)id;
    result.nodes.push_back(std::move(node));
  }
  result.edges.assign(edges.begin(), edges.end());
  return result;
}

}  // namespace pivotbench
