#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pivotbench/graphstore.hpp"
#include "pivotbench/metrics.hpp"
#include "pivotbench/rng.hpp"

using namespace pivotbench;

namespace {

const UserContext kUser = UserContext::make("acme_engineering", Tier::Internal);

ContextItem item(const std::string& id, NodeKind kind, const std::string& tenant,
                 Tier tier, int hop = 0) {
  ContextItem it;
  it.node_id = id;
  it.kind = kind;
  it.tenant = tenant;
  it.sensitivity = tier;
  it.hop_depth = hop;
  return it;
}

ContextItem home_chunk(Tier tier = Tier::Public, int hop = 0) {
  return item("c_home", NodeKind::Chunk, "acme_engineering", tier, hop);
}

ContextItem foreign_chunk(Tier tier = Tier::Public, int hop = 2) {
  return item("c_foreign", NodeKind::Chunk, "globex_finance", tier, hop);
}

EvaluatedQuery record(std::vector<ContextItem> context) {
  EvaluatedQuery rec;
  rec.query.query_id = "q";
  rec.query.user = kUser;
  rec.result.context = std::move(context);
  return rec;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sensitivity predicate

TEST_CASE("entity items never count as sensitive") {
  const auto it =
      item("ent::X", NodeKind::Entity, "globex_finance", Tier::Restricted, 1);
  CHECK(!sensitive(it, kUser).sensitive);
  CHECK(sensitive(it, kUser).weight == 0.0);
}

TEST_CASE("over-clearance weight is the tier gap") {
  // Internal clearance: Confidential is one tier up, Restricted two.
  auto conf = home_chunk(Tier::Confidential);
  auto rest = home_chunk(Tier::Restricted);
  CHECK(sensitive(conf, kUser).sensitive);
  CHECK(sensitive(conf, kUser).weight == 1.0);
  CHECK(sensitive(rest, kUser).weight == 2.0);
}

TEST_CASE("over-clearance outranks cross-tenant in the weighting") {
  // A foreign Restricted chunk takes the tier-gap weight, not the flat 1.
  auto it = foreign_chunk(Tier::Restricted);
  CHECK(sensitive(it, kUser).weight == 2.0);
}

TEST_CASE("cross-tenant at or below clearance weighs one") {
  CHECK(sensitive(foreign_chunk(Tier::Public), kUser).weight == 1.0);
  CHECK(sensitive(foreign_chunk(Tier::Internal), kUser).weight == 1.0);
}

TEST_CASE("authorized home chunks are clean") {
  CHECK(!sensitive(home_chunk(Tier::Public), kUser).sensitive);
  CHECK(!sensitive(home_chunk(Tier::Internal), kUser).sensitive);
}

TEST_CASE("tenant-neutral chunks never trip the cross-tenant branch") {
  auto it = item("c_x", NodeKind::Chunk, "", Tier::Public);
  CHECK(!sensitive(it, kUser).sensitive);
}

// ---------------------------------------------------------------------------
// Per-query metrics

TEST_CASE("leakage count, swl, and pivot depth on a mixed context") {
  QueryResult r;
  r.context = {
      home_chunk(Tier::Public, 0),           // clean
      item("ent::B", NodeKind::Entity, "", Tier::Public, 1),
      foreign_chunk(Tier::Public, 2),        // leak, weight 1
      foreign_chunk(Tier::Restricted, 4),    // leak, weight 2
      home_chunk(Tier::Confidential, 2),     // leak, weight 1
  };
  CHECK(leakage_count(r, kUser) == 3);
  CHECK(swl(r, kUser) == 4.0);
  REQUIRE(pivot_depth(r, kUser).has_value());
  CHECK(*pivot_depth(r, kUser) == 2);
}

TEST_CASE("clean contexts have no pivot depth") {
  QueryResult r;
  r.context = {home_chunk(Tier::Public, 0)};
  CHECK(leakage_count(r, kUser) == 0);
  CHECK(!pivot_depth(r, kUser).has_value());
}

// ---------------------------------------------------------------------------
// Amplification

TEST_CASE("amplification at a zero baseline") {
  const auto r = amplification(16.0, 0.0, 0.1);
  CHECK(std::isinf(r.classical));
  CHECK(r.classical > 0.0);
  CHECK(r.stabilized == Catch::Approx(160.0));
  CHECK(r.delta == Catch::Approx(16.0));
  CHECK(r.epsilon == 0.1);
}

TEST_CASE("stabilized amplification across the epsilon grid") {
  CHECK(amplification(16.0, 0.0, 0.01).stabilized == Catch::Approx(1600.0));
  CHECK(amplification(16.0, 0.0, 0.05).stabilized == Catch::Approx(320.0));
  CHECK(amplification(16.0, 0.0, 0.1).stabilized == Catch::Approx(160.0));
  CHECK(amplification(16.0, 0.0, 0.5).stabilized == Catch::Approx(32.0));
}

TEST_CASE("amplification with a positive baseline") {
  const auto r = amplification(6.0, 2.0, 0.1);
  CHECK(r.classical == Catch::Approx(3.0));
  // max(2.0, 0.1) leaves the denominator alone.
  CHECK(r.stabilized == Catch::Approx(3.0));
  CHECK(r.delta == Catch::Approx(4.0));
}

TEST_CASE("amplification rejects bad arguments") {
  CHECK_THROWS_AS(amplification(1.0, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(amplification(1.0, 1.0, -0.5), ConfigError);
  CHECK_THROWS_AS(amplification(-1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(amplification(1.0, -1.0), ConfigError);
}

// ---------------------------------------------------------------------------
// Percentiles and bootstrap

TEST_CASE("percentile interpolates linearly") {
  const std::vector<double> s = {1.0, 2.0, 3.0, 4.0};
  CHECK(percentile_sorted(s, 0.0) == 1.0);
  CHECK(percentile_sorted(s, 1.0) == 4.0);
  CHECK(percentile_sorted(s, 0.5) == Catch::Approx(2.5));
  CHECK(percentile_sorted(s, 0.25) == Catch::Approx(1.75));
  CHECK(percentile_sorted(s, 0.975) == Catch::Approx(3.925));
  CHECK(percentile_sorted({7.0}, 0.5) == 7.0);
  CHECK_THROWS_AS(percentile_sorted({}, 0.5), ConfigError);
}

TEST_CASE("bootstrap is deterministic in the seed") {
  std::vector<double> xs;
  Rng rng(7);
  for (int i = 0; i < 100; ++i) xs.push_back(rng.unit());
  const auto a = bootstrap_ci(xs, 2000, 42);
  const auto b = bootstrap_ci(xs, 2000, 42);
  const auto c = bootstrap_ci(xs, 2000, 43);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  CHECK((a.lo != c.lo || a.hi != c.hi));
  CHECK(a.lo <= a.hi);
}

TEST_CASE("bootstrap on constant data collapses to the constant") {
  const std::vector<double> xs(50, 3.25);
  const auto ci = bootstrap_ci(xs, 1000, 42);
  CHECK(ci.lo == Catch::Approx(3.25));
  CHECK(ci.hi == Catch::Approx(3.25));
}

TEST_CASE("bootstrap brackets the true mean on a simple sample") {
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(i % 2 == 0 ? 0.0 : 1.0);
  const auto ci = bootstrap_ci(xs, 2000, 42);
  CHECK(ci.lo < 0.5);
  CHECK(ci.hi > 0.5);
  CHECK(ci.hi - ci.lo < 0.2);
}

TEST_CASE("bootstrap input validation") {
  CHECK_THROWS_AS(bootstrap_ci({}, 2000, 42), ConfigError);
  CHECK_THROWS_AS(bootstrap_ci({1.0, 2.0}, 999, 42), ConfigError);
}

// ---------------------------------------------------------------------------
// Summaries

TEST_CASE("summary over a hand-computed fixture") {
  // 20 queries: 8 leak (queries 0..7), 12 clean. Leaking queries carry two
  // foreign chunks at hops 2 and 4 plus one clean home chunk; clean queries
  // carry two home chunks.
  std::vector<EvaluatedQuery> records;
  for (int i = 0; i < 20; ++i) {
    if (i < 8) {
      records.push_back(record({home_chunk(), foreign_chunk(Tier::Public, 2),
                                foreign_chunk(Tier::Restricted, 4)}));
    } else {
      records.push_back(record({home_chunk(), home_chunk(Tier::Internal)}));
    }
  }
  SummaryOptions opt;
  opt.resamples = 1000;
  const auto s = summarize(records, opt);
  CHECK(s.n == 20);
  CHECK(s.rpr == Catch::Approx(8.0 / 20.0));
  CHECK(s.leaking_queries == 8);
  CHECK(s.mean_leakage == Catch::Approx(16.0 / 20.0));
  CHECK(s.mean_swl == Catch::Approx(8.0 * 3.0 / 20.0));
  CHECK(s.mean_context == Catch::Approx((8.0 * 3.0 + 12.0 * 2.0) / 20.0));
  REQUIRE(s.pd_min.has_value());
  CHECK(*s.pd_min == 2);
  CHECK(*s.pd_max == 2);
  CHECK(s.pd_median == 2.0);
  CHECK(s.rpr_ci.lo <= s.rpr);
  CHECK(s.rpr_ci.hi >= s.rpr);
}

TEST_CASE("summary without bootstrap pins the interval to the point") {
  std::vector<EvaluatedQuery> records = {record({foreign_chunk()})};
  SummaryOptions opt;
  opt.with_bootstrap = false;
  const auto s = summarize(records, opt);
  CHECK(s.rpr == 1.0);
  CHECK(s.rpr_ci.lo == 1.0);
  CHECK(s.rpr_ci.hi == 1.0);
  CHECK(s.leakage_ci.lo == s.mean_leakage);
}

TEST_CASE("summary with a baseline reports amplification") {
  std::vector<EvaluatedQuery> records = {
      record({foreign_chunk(), foreign_chunk(Tier::Internal, 3)})};
  SummaryOptions opt;
  opt.with_bootstrap = false;
  opt.vector_baseline_mean = 0.0;
  opt.epsilon = 0.5;
  const auto s = summarize(records, opt);
  REQUIRE(s.amplification_vs_baseline.has_value());
  CHECK(std::isinf(s.amplification_vs_baseline->classical));
  CHECK(s.amplification_vs_baseline->stabilized == Catch::Approx(4.0));
}

TEST_CASE("summary of an empty record set") {
  const auto s = summarize({});
  CHECK(s.n == 0);
  CHECK(s.rpr == 0.0);
  CHECK(!s.pd_min.has_value());
}

TEST_CASE("even pivot-depth counts take the midpoint median") {
  std::vector<EvaluatedQuery> records = {
      record({foreign_chunk(Tier::Public, 2)}),
      record({foreign_chunk(Tier::Public, 4)}),
  };
  SummaryOptions opt;
  opt.with_bootstrap = false;
  const auto s = summarize(records, opt);
  CHECK(s.pd_median == Catch::Approx(3.0));
}

// ---------------------------------------------------------------------------
// Utility

TEST_CASE("utility summary arithmetic") {
  std::vector<EvaluatedQuery> records = {
      record({home_chunk(), home_chunk(), foreign_chunk()}),
      record({home_chunk()}),
  };
  const auto u = utility_summary(records, 2.0);
  CHECK(u.mean_context == Catch::Approx(2.0));
  CHECK(u.mean_authorized == Catch::Approx(1.5));
  CHECK(u.authorization_rate == Catch::Approx(3.0 / 4.0));
  REQUIRE(u.retention.has_value());
  CHECK(*u.retention == Catch::Approx(0.75));
}

TEST_CASE("utility without a baseline omits retention") {
  const auto u = utility_summary({record({home_chunk()})});
  CHECK(!u.retention.has_value());
  CHECK(u.authorization_rate == 1.0);
}

// ---------------------------------------------------------------------------
// Rank correlation

TEST_CASE("spearman endpoints") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> up = {2.0, 4.0, 6.0, 8.0, 10.0};
  const std::vector<double> down = {5.0, 4.0, 3.0, 2.0, 1.0};
  CHECK(spearman(xs, up) == Catch::Approx(1.0));
  CHECK(spearman(xs, down) == Catch::Approx(-1.0));
}

TEST_CASE("spearman is monotone-invariant and handles ties") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> curved = {1.0, 8.0, 27.0, 64.0};
  CHECK(spearman(xs, curved) == Catch::Approx(1.0));
  // All-tied second sample has zero rank variance.
  CHECK(spearman(xs, {2.0, 2.0, 2.0, 2.0}) == 0.0);
}

TEST_CASE("spearman input validation") {
  CHECK_THROWS_AS(spearman({1.0}, {1.0}), ConfigError);
  CHECK_THROWS_AS(spearman({1.0, 2.0}, {1.0}), ConfigError);
}

TEST_CASE("average ranks split ties") {
  const auto r = average_ranks({10.0, 20.0, 20.0, 30.0});
  CHECK(r[0] == 1.0);
  CHECK(r[1] == Catch::Approx(2.5));
  CHECK(r[2] == Catch::Approx(2.5));
  CHECK(r[3] == 4.0);
}

// ---------------------------------------------------------------------------
// Bridge attribution

TEST_CASE("bridge attribution classifies hop-1 categories") {
  // Graph: bridge entity adjacent to the leaked foreign chunk.
  std::vector<GraphNode> nodes;
  GraphNode ent;
  ent.node_id = entity_node_id("shared-pipeline");
  ent.kind = NodeKind::Entity;
  ent.provenance = 1.0;
  ent.payload = "shared-pipeline";
  nodes.push_back(ent);
  GraphNode ch;
  ch.node_id = "c_foreign";
  ch.kind = NodeKind::Chunk;
  ch.tenant = "globex_finance";
  ch.sensitivity = Tier::Public;
  ch.payload = "x";
  nodes.push_back(ch);
  GraphStore graph;
  graph.load(std::move(nodes),
             {{"c_foreign", Relation::Mentions, entity_node_id("shared-pipeline")}});

  EntitySpec spec("shared-pipeline", EntityCategory::System);
  spec.bridge = true;
  spec.bridge_category = BridgeCategory::Infrastructure;

  auto bridged = record({item(entity_node_id("shared-pipeline"),
                              NodeKind::Entity, "", Tier::Public, 1),
                         foreign_chunk()});
  auto unbridged = record({foreign_chunk()});
  auto clean = record({home_chunk()});

  const auto attr =
      bridge_attribution({bridged, unbridged, clean}, graph, {spec});
  CHECK(attr.leaking_queries == 2);
  CHECK(attr.no_bridge_queries == 1);
  const auto cat =
      bridge_category_name(BridgeCategory::Infrastructure);
  REQUIRE(attr.by_category.count(cat) == 1);
  CHECK(attr.by_category.at(cat).queries == 1);
  CHECK(attr.by_category.at(cat).leaked_items == 1);
}
