#pragma once

// Exact dense retrieval over chunk embeddings. Authorization prefilter runs
// before any similarity is computed, so an unauthorized chunk can never
// appear in a result regardless of score. Scan is brute force by design:
// results are exactly the cosine ranking with ascending-id tie-breaks.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pivotbench/core.hpp"
#include "pivotbench/ingestion.hpp"

namespace pivotbench {

struct VectorRecord {
  std::string chunk_id;
  Embedding embedding;
  std::string tenant;
  Tier sensitivity = Tier::Public;
  double provenance = 1.0;
  std::string text;
};

struct ScoredChunk {
  std::string chunk_id;
  double score = 0.0;
};

class VectorIndex {
 public:
  explicit VectorIndex(std::size_t dim = kDefaultEmbeddingDim) : dim_(dim) {
    if (dim_ < kMinEmbeddingDim) {
      throw ConfigError("embedding dimension must be >= " +
                        std::to_string(kMinEmbeddingDim));
    }
  }

  void insert(VectorRecord record) {
    if (frozen_) throw StateError("vector index is frozen");
    if (record.embedding.values.size() != dim_) {
      throw ConfigError("record dimension mismatch for " + record.chunk_id);
    }
    auto [it, inserted] =
        records_.emplace(record.chunk_id, std::move(record));
    (void)it;
    if (!inserted) {
      throw StateError("duplicate chunk id: " + record.chunk_id);
    }
  }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  std::size_t size() const { return records_.size(); }
  std::size_t dimension() const { return dim_; }

  const VectorRecord* find(const std::string& chunk_id) const {
    auto it = records_.find(chunk_id);
    return it == records_.end() ? nullptr : &it->second;
  }

  // Top-k authorized chunks by cosine similarity. Only records whose tenant
  // is allowed for the user and whose sensitivity is within the user's
  // clearance are scored at all. Ties (including an all-zero query, which
  // scores every record 0) resolve by ascending chunk id.
  std::vector<ScoredChunk> topk(const Embedding& query, std::size_t k,
                                const UserContext& user) const {
    if (query.values.size() != dim_) {
      throw ConfigError("query dimension mismatch");
    }
    std::vector<ScoredChunk> scored;
    for (const auto& [id, rec] : records_) {
      if (user.allowed_tenants.count(rec.tenant) == 0) continue;
      if (tier_level(rec.sensitivity) > tier_level(user.clearance)) continue;
      scored.push_back(ScoredChunk{id, cosine(query, rec.embedding)});
    }
    std::sort(scored.begin(), scored.end(),
              [](const ScoredChunk& a, const ScoredChunk& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.chunk_id < b.chunk_id;
              });
    if (scored.size() > k) scored.resize(k);
    return scored;
  }

 private:
  std::size_t dim_;
  bool frozen_ = false;
  std::map<std::string, VectorRecord> records_;  // keyed by chunk id
};

// Builds the index from ingested chunk nodes, embedding each chunk's text.
inline VectorIndex build_vector_index(const std::vector<GraphNode>& nodes,
                                      std::size_t dim) {
  VectorIndex index(dim);
  for (const auto& node : nodes) {
    if (node.kind != NodeKind::Chunk) continue;
    VectorRecord rec;
    rec.chunk_id = node.node_id;
    rec.embedding = embed(node.payload, dim);
    rec.tenant = node.tenant;
    rec.sensitivity = node.sensitivity;
    rec.provenance = node.provenance;
    rec.text = node.payload;
    index.insert(std::move(rec));
  }
  index.freeze();
  return index;
}

}  // namespace pivotbench
