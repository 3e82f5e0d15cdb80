#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "pivotbench/corpusgen.hpp"
#include "pivotbench/ingestion.hpp"
#include "pivotbench/metrics.hpp"
#include "pivotbench/pipeline.hpp"

using namespace pivotbench;

namespace {

constexpr std::size_t kDim = 32;

struct Fixture {
  std::vector<Document> docs;
  IngestResult ingested;
  VectorIndex index{kDim};
  GraphStore graph;

  explicit Fixture(std::size_t num_docs) {
    CorpusConfig cfg;
    cfg.num_documents = num_docs;
    docs = generate_corpus(cfg);
    ingested = ingest_corpus(docs, build_dictionary(docs), IngestOptions{kDim});
    index = build_vector_index(ingested.nodes, kDim);
    graph.load(ingested.nodes, ingested.edges);
  }
};

Query probe(const std::string& text,
            Tier clearance = Tier::Internal) {
  Query q;
  q.query_id = "q_test";
  q.text = text;
  q.user = UserContext::make("acme_engineering", clearance);
  return q;
}

std::set<std::string> context_ids(const QueryResult& r) {
  std::set<std::string> ids;
  for (const auto& item : r.context) ids.insert(item.node_id);
  return ids;
}

bool subset_of(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration mapping

TEST_CASE("variants map to cumulative defense sets") {
  CHECK(PipelineConfig::for_variant(Variant::P1).defenses.empty());
  CHECK(PipelineConfig::for_variant(Variant::P3).defenses.empty());
  CHECK(PipelineConfig::for_variant(Variant::P4).defenses ==
        std::set<Defense>{Defense::D1});
  CHECK(PipelineConfig::for_variant(Variant::P5).defenses ==
        std::set<Defense>{Defense::D1, Defense::D2});
  CHECK(PipelineConfig::for_variant(Variant::P6).defenses ==
        std::set<Defense>{Defense::D1, Defense::D2, Defense::D3});
  CHECK(PipelineConfig::for_variant(Variant::P7).defenses ==
        std::set<Defense>{Defense::D1, Defense::D2, Defense::D3, Defense::D4});
  CHECK(PipelineConfig::for_variant(Variant::P8).defenses ==
        std::set<Defense>{Defense::D1, Defense::D2, Defense::D3, Defense::D4,
                          Defense::D5});
}

TEST_CASE("variant names round-trip") {
  for (Variant v : kAllVariants) {
    CHECK(variant_from_name(variant_name(v)) == v);
  }
  CHECK_THROWS_AS(variant_from_name("P2"), ConfigError);
  CHECK_THROWS_AS(variant_from_name(""), ConfigError);
}

TEST_CASE("defaults match the documented knobs") {
  PipelineConfig c;
  CHECK(c.top_k == 10);
  CHECK(c.budget.max_hops == 2);
  CHECK(c.budget.max_branching == 10);
  CHECK(c.budget.max_total == 100);
  CHECK(c.tightened_budget.max_total == 50);
  CHECK(c.trust_threshold == 0.6);
  CHECK(c.edge_allowlist ==
        std::set<Relation>{Relation::Mentions, Relation::DependsOn,
                           Relation::BelongsTo});
}

// ---------------------------------------------------------------------------
// Defense primitives

TEST_CASE("post-expansion authorization rejects entities and foreign chunks") {
  const auto user = UserContext::make("acme_engineering", Tier::Internal);
  GraphNode n;
  n.kind = NodeKind::Chunk;
  n.tenant = "acme_engineering";
  n.sensitivity = Tier::Internal;
  CHECK(d1_is_authorized(n, user));
  n.sensitivity = Tier::Confidential;
  CHECK(!d1_is_authorized(n, user));
  n.sensitivity = Tier::Public;
  n.tenant = "globex_finance";
  CHECK(!d1_is_authorized(n, user));
  // Entity nodes carry an empty tenant, which no allowed set contains.
  n.kind = NodeKind::Entity;
  n.tenant = "";
  CHECK(!d1_is_authorized(n, user));
}

TEST_CASE("trust filter keeps items at the threshold") {
  std::vector<ContextItem> items(3);
  items[0].provenance = 0.59;
  items[1].provenance = 0.6;
  items[2].provenance = 0.95;
  d4_trust_filter(items, 0.6);
  REQUIRE(items.size() == 2);
  CHECK(items[0].provenance == 0.6);
}

TEST_CASE("merge-time re-check drops cross-tenant and over-clearance items") {
  const auto user = UserContext::make("acme_engineering", Tier::Internal);
  std::vector<ContextItem> items(4);
  items[0].node_id = "keep";
  items[0].tenant = "acme_engineering";
  items[0].sensitivity = Tier::Internal;
  items[1].node_id = "foreign";
  items[1].tenant = "globex_finance";
  items[2].node_id = "entity";
  items[2].tenant = "";
  items[3].node_id = "secret";
  items[3].tenant = "acme_engineering";
  items[3].sensitivity = Tier::Restricted;
  d5_merge_filter(items, user);
  REQUIRE(items.size() == 1);
  CHECK(items[0].node_id == "keep");
}

// ---------------------------------------------------------------------------
// End-to-end behavior on a generated corpus

TEST_CASE("vector-only runs without a graph, hybrid variants refuse") {
  Fixture f(24);
  Pipeline no_graph(f.index, nullptr);
  const auto q = probe("status of the deployment pipeline");
  CHECK_NOTHROW(no_graph.run_query(q, PipelineConfig::for_variant(Variant::P1)));
  CHECK_THROWS_AS(
      no_graph.run_query(q, PipelineConfig::for_variant(Variant::P3)),
      StateError);
}

TEST_CASE("vector-only contexts are clean by construction") {
  Fixture f(60);
  Pipeline p(f.index, &f.graph);
  const auto cfg = PipelineConfig::for_variant(Variant::P1);
  for (const char* text :
       {"incident report for the billing rollout",
        "summary of vendor contracts", "what changed in the cache layer"}) {
    for (Tier clearance : {Tier::Public, Tier::Internal}) {
      const auto r = p.run_query(probe(text, clearance), cfg);
      CHECK(r.context.size() <= 10);
      for (std::size_t i = 0; i < r.context.size(); ++i) {
        const auto& item = r.context[i];
        CHECK(item.hop_depth == 0);
        CHECK(item.source == ItemSource::Vector);
        CHECK(item.tenant == "acme_engineering");
        CHECK(tier_level(item.sensitivity) <= tier_level(clearance));
        CHECK(!r.per_item_sensitive[i]);
      }
      CHECK(!r.pd.has_value());
    }
  }
}

TEST_CASE("hybrid expansion adds graph items on top of the seeds") {
  Fixture f(60);
  Pipeline p(f.index, &f.graph);
  const auto q = probe("incident report for the billing rollout");
  const auto p1 = p.run_query(q, PipelineConfig::for_variant(Variant::P1));
  const auto p3 = p.run_query(q, PipelineConfig::for_variant(Variant::P3));
  CHECK(p3.context.size() > p1.context.size());
  CHECK(subset_of(context_ids(p1), context_ids(p3)));
  bool saw_graph_item = false;
  for (const auto& item : p3.context) {
    if (item.source == ItemSource::Graph) {
      saw_graph_item = true;
      CHECK(item.hop_depth >= 1);
    }
  }
  CHECK(saw_graph_item);
}

TEST_CASE("defended contexts nest where the layers only filter") {
  Fixture f(80);
  Pipeline p(f.index, &f.graph);
  const std::vector<std::string> probes = {
      "incident report for the billing rollout",
      "who owns the vendor integration",
      "notes on the shared deployment tooling",
  };
  for (const auto& text : probes) {
    const auto q = probe(text);
    const auto p3 = context_ids(p.run_query(q, PipelineConfig::for_variant(Variant::P3)));
    const auto p4 = context_ids(p.run_query(q, PipelineConfig::for_variant(Variant::P4)));
    const auto p5 = context_ids(p.run_query(q, PipelineConfig::for_variant(Variant::P5)));
    const auto p6 = context_ids(p.run_query(q, PipelineConfig::for_variant(Variant::P6)));
    const auto p7 = context_ids(p.run_query(q, PipelineConfig::for_variant(Variant::P7)));
    const auto p8 = context_ids(p.run_query(q, PipelineConfig::for_variant(Variant::P8)));
    CHECK(subset_of(p4, p3));
    CHECK(subset_of(p6, p5));
    CHECK(subset_of(p7, p6));
    CHECK(subset_of(p8, p7));
  }
}

TEST_CASE("authorization filtering leaves no entity items") {
  Fixture f(60);
  Pipeline p(f.index, &f.graph);
  for (Variant v : {Variant::P4, Variant::P5, Variant::P6, Variant::P7,
                    Variant::P8}) {
    const auto r = p.run_query(probe("vendor contract escalation"),
                               PipelineConfig::for_variant(v));
    for (const auto& item : r.context) {
      CHECK(item.kind == NodeKind::Chunk);
      CHECK(item.tenant == "acme_engineering");
    }
  }
}

TEST_CASE("undefended expansion reaches entities at hop one") {
  Fixture f(60);
  Pipeline p(f.index, &f.graph);
  const auto r = p.run_query(probe("incident report for the billing rollout"),
                             PipelineConfig::for_variant(Variant::P3));
  bool saw_entity = false;
  for (const auto& item : r.context) {
    if (item.kind == NodeKind::Entity) {
      saw_entity = true;
      CHECK(item.hop_depth >= 1);
      // Entities serialize with their category and a few edges.
      CHECK(item.serialized_text.find("(") != std::string::npos);
    }
  }
  CHECK(saw_entity);
}

TEST_CASE("seeds rediscovered by the expansion keep their vector copy") {
  Fixture f(40);
  Pipeline p(f.index, &f.graph);
  const auto r = p.run_query(probe("deployment checklist for the quarter"),
                             PipelineConfig::for_variant(Variant::P3));
  std::set<std::string> ids;
  for (const auto& item : r.context) {
    CHECK(ids.insert(item.node_id).second);  // no duplicates
  }
  // Every vector seed is present exactly once, at hop 0.
  const auto p1 = p.run_query(probe("deployment checklist for the quarter"),
                              PipelineConfig::for_variant(Variant::P1));
  for (const auto& seed : p1.context) {
    bool found = false;
    for (const auto& item : r.context) {
      if (item.node_id == seed.node_id) {
        CHECK(item.hop_depth == 0);
        CHECK(item.source == ItemSource::Vector);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("tightened budget caps the context size") {
  Fixture f(80);
  Pipeline p(f.index, &f.graph);
  const auto q = probe("notes on the shared deployment tooling");
  auto loose = PipelineConfig::for_variant(Variant::P3);
  auto tight = loose;
  tight.defenses = {Defense::D3};
  const auto rl = p.run_query(q, loose);
  const auto rt = p.run_query(q, tight);
  CHECK(rl.context.size() <= 100);
  CHECK(rt.context.size() <= 50);
  CHECK(rt.context.size() <= rl.context.size());
}

TEST_CASE("per-item sensitivity flags agree with the metrics predicate") {
  Fixture f(60);
  Pipeline p(f.index, &f.graph);
  const auto q = probe("what links the vendor accounts to the audit");
  const auto r = p.run_query(q, PipelineConfig::for_variant(Variant::P3));
  REQUIRE(r.per_item_sensitive.size() == r.context.size());
  for (std::size_t i = 0; i < r.context.size(); ++i) {
    CHECK(r.per_item_sensitive[i] == sensitive(r.context[i], q.user).sensitive);
  }
  if (r.pd.has_value()) {
    CHECK(*r.pd == *pivot_depth(r, q.user));
  }
}

TEST_CASE("chunk items carry their chunk text") {
  Fixture f(24);
  Pipeline p(f.index, &f.graph);
  const auto r = p.run_query(probe("quarterly budget review"),
                             PipelineConfig::for_variant(Variant::P3));
  REQUIRE(!r.context.empty());
  for (const auto& item : r.context) {
    if (item.kind != NodeKind::Chunk) continue;
    const GraphNode& n = f.graph.node(item.node_id);
    CHECK(item.serialized_text == n.payload);
  }
}

TEST_CASE("latency is recorded") {
  Fixture f(24);
  Pipeline p(f.index, &f.graph);
  const auto r = p.run_query(probe("anything at all"),
                             PipelineConfig::for_variant(Variant::P3));
  CHECK(r.latency_ms >= 0.0);
}
