#pragma once

// Synthetic multi-tenant corpus generator. Four tenants with fixed entity
// pools, three document genres assembled from sentence templates, a
// configurable set of cross-tenant bridge entities, and a deterministic
// sensitivity-tier allocation. Regenerating with the same config is
// bit-identical.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pivotbench/core.hpp"
#include "pivotbench/rng.hpp"
#include "pivotbench/text.hpp"

namespace pivotbench {

struct CorpusConfig {
  std::size_t num_documents = 1000;
  std::size_t bridge_count = 15;
  // PUBLIC / INTERNAL / CONFIDENTIAL / RESTRICTED fractions; must sum to 1.
  std::array<double, 4> sensitivity_mix = {0.4, 0.3, 0.2, 0.1};
  std::uint64_t seed = 42;
};

// ---------------------------------------------------------------------------
// Entity pools

namespace detail {

inline std::vector<EntitySpec> make_specs(
    std::initializer_list<const char*> names, EntityCategory cat) {
  std::vector<EntitySpec> out;
  for (const char* n : names) out.emplace_back(n, cat);
  return out;
}

}  // namespace detail

// Tenant-local pools. Sub-pool sizes are fixed: 12/15/6 for the engineering
// tenant, 10/6/7 finance, 12/7/10 HR, 6/8/6 security.
inline const std::map<std::string, std::vector<EntitySpec>>& entity_pools() {
  static const std::map<std::string, std::vector<EntitySpec>> pools = [] {
    std::map<std::string, std::vector<EntitySpec>> p;

    auto& eng = p["acme_engineering"];
    for (auto& s : detail::make_specs(
             {"auth-service", "billing-api", "payment-gateway", "user-service",
              "search-indexer", "notification-hub", "data-pipeline",
              "inventory-service", "session-manager", "api-gateway",
              "metrics-collector", "config-server"},
             EntityCategory::System))
      eng.push_back(s);
    for (auto& s : detail::make_specs(
             {"Kubernetes", "Docker", "PostgreSQL", "Redis", "Kafka",
              "Terraform", "Prometheus", "Grafana", "React", "GraphQL",
              "Elasticsearch", "RabbitMQ", "Jenkins", "Istio", "Vault"},
             EntityCategory::Technology))
      eng.push_back(s);
    for (auto& s : detail::make_specs(
             {"Project Alpha", "Project Borealis", "Project Cascade",
              "Project Delta", "Project Ember", "Project Falcon"},
             EntityCategory::Project))
      eng.push_back(s);

    auto& fin = p["globex_finance"];
    for (auto& s : detail::make_specs(
             {"Deloitte", "KPMG", "PwC", "Accenture", "Bloomberg Terminal",
              "Thomson Reuters", "Stripe", "NetSuite", "Workday",
              "Iron Mountain"},
             EntityCategory::Vendor))
      fin.push_back(s);
    for (auto& s : detail::make_specs(
             {"Capital Expenditure 2025", "Operating Budget FY25",
              "Reserve Fund", "Payroll Account", "Vendor Escrow",
              "Treasury Portfolio"},
             EntityCategory::Account))
      fin.push_back(s);
    for (auto& s : detail::make_specs(
             {"SOX", "GAAP", "IFRS", "Basel III", "Dodd-Frank", "MiFID II",
              "FCPA"},
             EntityCategory::Regulation))
      fin.push_back(s);

    auto& hr = p["initech_hr"];
    for (auto& s : detail::make_specs(
             {"Engineering", "Finance", "Sales", "Marketing", "Legal",
              "Operations", "Customer Support", "Product", "Design",
              "Data Science", "Procurement", "Facilities"},
             EntityCategory::Department))
      hr.push_back(s);
    for (auto& s : detail::make_specs(
             {"401k matching", "dental coverage", "parental leave",
              "tuition reimbursement", "wellness stipend", "commuter benefits",
              "stock options"},
             EntityCategory::Benefit))
      hr.push_back(s);
    for (auto& s : detail::make_specs(
             {"Maria Chen", "James Rodriguez", "Aisha Patel", "Elena Volkov",
              "David Kim", "Sarah Okafor", "Tom Nguyen", "Priya Sharma",
              "Lucas Meyer", "Hannah Goldberg"},
             EntityCategory::Person))
      hr.push_back(s);

    auto& sec = p["umbrella_security"];
    for (auto& s : detail::make_specs(
             {"CVE-2025-41923", "CVE-2025-20917", "CVE-2024-88210",
              "CVE-2025-31337", "CVE-2024-52104", "CVE-2025-60666"},
             EntityCategory::Cve))
      sec.push_back(s);
    for (auto& s : detail::make_specs(
             {"Splunk SIEM", "Nessus", "Wireshark", "Metasploit",
              "CrowdStrike Falcon", "Burp Suite", "osquery", "Zeek"},
             EntityCategory::Tool))
      sec.push_back(s);
    for (auto& s : detail::make_specs(
             {"NIST CSF", "CIS Controls", "OWASP SAMM",
              "Zero Trust Architecture", "FAIR Model", "COBIT"},
             EntityCategory::Framework))
      sec.push_back(s);

    return p;
  }();
  return pools;
}

// The 15 named bridge specs, three per connector category. Some names
// deliberately coincide with tenant-pool members: a connector may already be
// known organically to one tenant (a shared employee, a shared service).
inline const std::vector<EntitySpec>& bridge_pool() {
  static const std::vector<EntitySpec> pool = {
      {"CloudCorp", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"DataSyncInc", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"SecureNetLLC", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"k8s-prod-cluster", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"splunk-siem", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"auth-service", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"Maria Chen", EntityCategory::Person, BridgeCategory::Personnel},
      {"James Rodriguez", EntityCategory::Person, BridgeCategory::Personnel},
      {"Aisha Patel", EntityCategory::Person, BridgeCategory::Personnel},
      {"SOC2-audit", EntityCategory::Compliance, BridgeCategory::Compliance},
      {"PCI-DSS-cert", EntityCategory::Compliance, BridgeCategory::Compliance},
      {"ISO27001", EntityCategory::Compliance, BridgeCategory::Compliance},
      {"ProjectNexus", EntityCategory::Project, BridgeCategory::Project},
      {"ProjectHorizon", EntityCategory::Project, BridgeCategory::Project},
      {"ProjectArcade", EntityCategory::Project, BridgeCategory::Project},
  };
  return pool;
}

namespace detail {

// Extra specs for connectivity sweeps past the named fifteen (up to 40).
inline const std::vector<EntitySpec>& extra_bridge_pool() {
  static const std::vector<EntitySpec> pool = {
      {"MeridianPartners", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"ApexLogistics", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"NorthwindLabs", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"QuantiveGroup", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"HelixOutsourcing", EntityCategory::Vendor, BridgeCategory::Vendor},
      {"edge-cache-fleet", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"backup-vault-02", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"sso-portal", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"billing-warehouse", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"vpn-concentrator", EntityCategory::Infrastructure,
       BridgeCategory::Infrastructure},
      {"Noor Haddad", EntityCategory::Person, BridgeCategory::Personnel},
      {"Felix Andersen", EntityCategory::Person, BridgeCategory::Personnel},
      {"Grace Liu", EntityCategory::Person, BridgeCategory::Personnel},
      {"Omar Diallo", EntityCategory::Person, BridgeCategory::Personnel},
      {"Ingrid Bauer", EntityCategory::Person, BridgeCategory::Personnel},
      {"GDPR-assessment", EntityCategory::Compliance,
       BridgeCategory::Compliance},
      {"HIPAA-review", EntityCategory::Compliance, BridgeCategory::Compliance},
      {"FedRAMP-package", EntityCategory::Compliance,
       BridgeCategory::Compliance},
      {"CCPA-program", EntityCategory::Compliance, BridgeCategory::Compliance},
      {"NIS2-readiness", EntityCategory::Compliance,
       BridgeCategory::Compliance},
      {"ProjectLantern", EntityCategory::Project, BridgeCategory::Project},
      {"ProjectQuarry", EntityCategory::Project, BridgeCategory::Project},
      {"ProjectSable", EntityCategory::Project, BridgeCategory::Project},
      {"ProjectTundra", EntityCategory::Project, BridgeCategory::Project},
      {"ProjectVerdant", EntityCategory::Project, BridgeCategory::Project},
  };
  return pool;
}

}  // namespace detail

// First `count` bridge specs in category-interleaved order, so count=5 picks
// one connector of each category and count=15 covers the named pool exactly.
inline std::vector<EntitySpec> bridge_pool_selection(std::size_t count) {
  constexpr std::size_t kMax = 40;
  if (count > kMax) {
    throw ConfigError("bridge_count must be <= 40, got " +
                      std::to_string(count));
  }
  std::vector<EntitySpec> ordered;
  const auto& named = bridge_pool();
  const auto& extra = detail::extra_bridge_pool();
  // named: 3 per category, grouped; extra: 5 per category, grouped.
  for (std::size_t rank = 0; rank < 8; ++rank) {
    for (std::size_t cat = 0; cat < 5; ++cat) {
      if (rank < 3) {
        ordered.push_back(named[cat * 3 + rank]);
      } else {
        ordered.push_back(extra[cat * 5 + (rank - 3)]);
      }
    }
  }
  ordered.resize(count);
  return ordered;
}

// ---------------------------------------------------------------------------
// Tier allocation

// Largest-remainder tier counts for n documents under the given mix.
inline std::array<std::size_t, 4> tier_counts(
    std::size_t n, const std::array<double, 4>& mix) {
  double sum = 0.0;
  for (double m : mix) {
    if (m < 0.0 || m > 1.0) {
      throw ConfigError("sensitivity_mix entries must lie in [0,1]");
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("sensitivity_mix must sum to 1");
  }
  std::array<std::size_t, 4> counts{};
  std::array<double, 4> remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    double exact = mix[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(exact + 1e-12));
    remainder[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  while (assigned < n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i) {
      if (remainder[i] > remainder[best] + 1e-12) best = i;
    }
    counts[best] += 1;
    remainder[best] = -1.0;
    assigned += 1;
  }
  return counts;
}

// Tier for each document index, spread proportionally through the id space
// (error-diffusion assignment) so every id-ordered slice sees the full mix.
inline std::vector<Tier> tier_sequence(std::size_t n,
                                       const std::array<double, 4>& mix) {
  auto counts = tier_counts(n, mix);
  std::array<std::size_t, 4> used{};
  std::vector<Tier> seq;
  seq.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 4;
    double best_deficit = -1e18;
    for (std::size_t t = 0; t < 4; ++t) {
      if (used[t] >= counts[t]) continue;
      double target = static_cast<double>(counts[t]) *
                      static_cast<double>(i + 1) / static_cast<double>(n);
      double deficit = target - static_cast<double>(used[t]);
      if (deficit > best_deficit + 1e-12) {
        best_deficit = deficit;
        best = t;
      }
    }
    if (best == 4) throw StateError("tier assignment exhausted early");
    used[best] += 1;
    seq.push_back(static_cast<Tier>(best));
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Text assembly

namespace detail {

// Per-tenant slot roles: primary subjects, supporting references, initiatives.
struct TenantRoles {
  std::vector<EntitySpec> primary;
  std::vector<EntitySpec> support;
  std::vector<EntitySpec> initiative;
};

inline TenantRoles roles_for(const std::string& tenant) {
  const auto& pools = entity_pools();
  auto it = pools.find(tenant);
  if (it == pools.end()) throw ConfigError("unknown tenant: " + tenant);
  TenantRoles r;
  for (const auto& e : it->second) {
    switch (e.category) {
      case EntityCategory::System:
      case EntityCategory::Vendor:
      case EntityCategory::Department:
      case EntityCategory::Tool:
        r.primary.push_back(e);
        break;
      case EntityCategory::Technology:
      case EntityCategory::Regulation:
      case EntityCategory::Benefit:
      case EntityCategory::Framework:
        r.support.push_back(e);
        break;
      default:
        r.initiative.push_back(e);
        break;
    }
  }
  return r;
}

inline const std::vector<std::string>& filler_bank() {
  static const std::vector<std::string> bank = {
      "The quarterly review captured several follow-up items for the next "
      "cycle.",
      "Stakeholders agreed to revisit the rollout timeline after the freeze "
      "window.",
      "Documentation updates were merged and published to the internal "
      "portal.",
      "No major incidents were reported during the period under review.",
      "Capacity planning numbers were refreshed with the latest usage "
      "figures.",
      "The on-call rotation was rebalanced to cover the new region.",
      "Follow-up actions were assigned with owners and due dates.",
      "A tabletop exercise is scheduled for the first week of next month.",
      "Budget variance stayed within the agreed threshold for the quarter.",
      "The steering committee approved the revised milestone plan.",
      "Onboarding checks for the new supplier completed without exceptions.",
      "Access reviews were completed for all privileged accounts.",
      "Latency dashboards stayed green through the reporting window.",
      "Two change requests were deferred pending additional review.",
      "Training completion rates improved over the previous cycle.",
      "The archival job now runs nightly with alerting on failure.",
      "Hiring against the approved plan continued on schedule.",
      "Notes from the working session are attached to the tracker.",
  };
  return bank;
}

inline std::string bridge_sentence(const EntitySpec& bridge) {
  switch (*bridge.bridge_category) {
    case BridgeCategory::Vendor:
      return "Coordination with " + bridge.canonical_name +
             " continues on a quarterly cadence.";
    case BridgeCategory::Infrastructure:
      return "Workloads were migrated onto " + bridge.canonical_name +
             " during the maintenance window.";
    case BridgeCategory::Personnel:
      return bridge.canonical_name +
             " coordinates the cross-team effort for this area.";
    case BridgeCategory::Compliance:
      return "Evidence collection for " + bridge.canonical_name +
             " is underway this quarter.";
    case BridgeCategory::Project:
      return "Scope for " + bridge.canonical_name +
             " was reviewed with the partner teams.";
  }
  throw ConfigError("unknown bridge category");
}

// Draw k distinct specs from a pool (cycling deterministically if k exceeds
// the pool, which none of the shipped pools require).
inline std::vector<EntitySpec> draw_distinct(const std::vector<EntitySpec>& pool,
                                             std::size_t k, Rng& rng) {
  std::vector<EntitySpec> out;
  if (pool.empty()) throw ConfigError("empty entity pool");
  if (k <= pool.size()) {
    for (std::size_t idx : rng.sample_indices(pool.size(), k)) {
      out.push_back(pool[idx]);
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) out.push_back(pool[i % pool.size()]);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Generation

inline std::vector<Document> generate_corpus(const CorpusConfig& config) {
  if (config.num_documents == 0) {
    throw ConfigError("num_documents must be positive");
  }
  // Tier quotas are applied per tenant, so every tenant carries its share of
  // sensitive material regardless of how documents interleave.
  std::map<std::string, std::vector<Tier>> tiers_by_tenant;
  {
    std::map<std::string, std::size_t> tenant_docs;
    for (std::size_t i = 0; i < config.num_documents; ++i) {
      tenant_docs[std::string(kTenants[i % kTenants.size()])]++;
    }
    for (const auto& [tenant, count] : tenant_docs) {
      tiers_by_tenant[tenant] = tier_sequence(count, config.sensitivity_mix);
    }
  }
  const auto bridges = bridge_pool_selection(config.bridge_count);

  std::vector<Document> docs;
  docs.reserve(config.num_documents);

  // Zero-padded ids; tenants round-robin so per-tenant counts differ by <= 1
  // and id-ordered slices interleave tenants.
  std::size_t width = 4;
  for (std::size_t w = 10000; w <= config.num_documents; w *= 10) ++width;

  std::map<std::string, std::size_t> tenant_seq;
  for (std::size_t i = 0; i < config.num_documents; ++i) {
    const std::string tenant(kTenants[i % kTenants.size()]);
    const std::size_t within = tenant_seq[tenant]++;
    const Genre genre = kAllGenres[within % kAllGenres.size()];

    char idbuf[32];
    std::snprintf(idbuf, sizeof(idbuf), "doc_%0*zu", static_cast<int>(width),
                  i);

    Document d;
    d.doc_id = idbuf;
    d.tenant = tenant;
    d.sensitivity = tiers_by_tenant.at(tenant)[within];
    d.genre = genre;

    Rng rng(derive_stream(config.seed, "doc/" + tenant + "/" +
                                          genre_name(genre) + "/" +
                                          std::to_string(within)));

    const auto roles = detail::roles_for(tenant);
    const std::size_t n_slots = static_cast<std::size_t>(rng.uniform_int(6, 10));
    // Slot order: primary, support, primary, support, initiative, initiative,
    // then alternating primary/support extras.
    auto primaries = detail::draw_distinct(roles.primary, 4, rng);
    auto supports = detail::draw_distinct(roles.support, 4, rng);
    auto initiatives = detail::draw_distinct(roles.initiative, 2, rng);
    std::vector<EntitySpec> slots = {
        primaries[0], supports[0], primaries[1], supports[1],
        initiatives[0], initiatives[1], primaries[2], supports[2],
        primaries[3], supports[3]};
    slots.resize(n_slots);

    auto name_of = [&](std::size_t i2) { return slots[i2].canonical_name; };

    std::vector<std::string> sentences;
    std::vector<RelationTriple> relations;
    switch (genre) {
      case Genre::Architecture: {
        sentences.push_back("This note describes how " + name_of(0) +
                            " is structured and operated.");
        sentences.push_back(name_of(0) + " depends on " + name_of(1) + ".");
        relations.push_back({name_of(0), Relation::DependsOn, name_of(1)});
        sentences.push_back("The " + name_of(0) +
                            " rollout is tracked under " + name_of(4) + ".");
        sentences.push_back(name_of(2) + " depends on " + name_of(3) + ".");
        relations.push_back({name_of(2), Relation::DependsOn, name_of(3)});
        sentences.push_back("Runbooks for " + name_of(0) +
                            " cover failover, checkpoints, and restore "
                            "paths.");
        sentences.push_back("Interfaces between " + name_of(0) + " and " +
                            name_of(2) + " are versioned and reviewed.");
        sentences.push_back("Telemetry from " + name_of(5) +
                            " feeds the shared dashboards.");
        break;
      }
      case Genre::Policy: {
        sentences.push_back("This policy outlines handling requirements "
                            "involving " + name_of(0) + ".");
        sentences.push_back(name_of(4) + " is derived from " + name_of(1) +
                            ".");
        relations.push_back({name_of(4), Relation::DerivedFrom, name_of(1)});
        sentences.push_back(name_of(0) + " is owned by " + name_of(5) + ".");
        relations.push_back({name_of(0), Relation::OwnedBy, name_of(5)});
        sentences.push_back("Access involving " + name_of(2) +
                            " requires an approved request and periodic "
                            "recertification.");
        sentences.push_back("Exceptions involving " + name_of(3) +
                            " must be logged and reviewed twice a year.");
        break;
      }
      case Genre::StatusReport: {
        sentences.push_back("Weekly status update covering " + name_of(4) +
                            " and related workstreams.");
        sentences.push_back(name_of(0) + " depends on " + name_of(1) + ".");
        relations.push_back({name_of(0), Relation::DependsOn, name_of(1)});
        sentences.push_back("Milestones for " + name_of(4) +
                            " slipped by one sprint due to staffing gaps.");
        sentences.push_back("The team closed eleven tickets related to " +
                            name_of(0) + ".");
        sentences.push_back(name_of(5) + " is derived from " + name_of(1) +
                            ".");
        relations.push_back({name_of(5), Relation::DerivedFrom, name_of(1)});
        sentences.push_back("Risk items involving " + name_of(2) +
                            " remain open with owners assigned.");
        sentences.push_back("A review of " + name_of(3) +
                            " was added to next week's agenda.");
        break;
      }
    }
    for (std::size_t s = 6; s < n_slots; ++s) {
      sentences.push_back(name_of(s) +
                          " was reviewed as part of the broader effort.");
    }

    const std::size_t target_tokens =
        static_cast<std::size_t>(rng.uniform_int(150, 450));
    std::size_t tokens = 0;
    for (const auto& s : sentences) tokens += count_tokens(s);
    const auto& bank = detail::filler_bank();
    std::vector<std::string> fillers;
    while (tokens < target_tokens) {
      fillers.push_back(bank[rng.below(bank.size())]);
      tokens += count_tokens(fillers.back());
    }

    // Filler is interleaved between the slotted sentences rather than
    // appended as a trailing block, so every chunk of a multi-chunk document
    // carries entity mentions.
    std::string text;
    auto append_sentence = [&](const std::string& s) {
      if (!text.empty()) text += " ";
      text += s;
    };
    std::size_t used = 0;
    for (std::size_t si = 0; si < sentences.size(); ++si) {
      append_sentence(sentences[si]);
      const std::size_t want = fillers.size() * (si + 1) / sentences.size();
      while (used < want) append_sentence(fillers[used++]);
    }
    while (used < fillers.size()) append_sentence(fillers[used++]);

    d.text = std::move(text);
    d.ground_truth_entities = slots;
    d.ground_truth_relations = std::move(relations);
    d.provenance = rng.uniform_real(0.7, 1.0);
    docs.push_back(std::move(d));
  }

  // Bridge injection: each selected bridge spec is appended to a fixed number
  // of documents in every tenant, so each appears across >= 2 tenants.
  constexpr std::size_t kBridgeDocsPerTenant = 3;
  std::map<std::string, std::vector<std::size_t>> docs_by_tenant;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    docs_by_tenant[docs[i].tenant].push_back(i);
  }
  for (const auto& bridge : bridges) {
    for (const auto& tenant : kTenants) {
      const auto& members = docs_by_tenant[std::string(tenant)];
      if (members.empty()) continue;
      Rng rng(derive_stream(config.seed, "bridge/" + bridge.canonical_name +
                                             "/" + std::string(tenant)));
      const std::size_t take =
          std::min(kBridgeDocsPerTenant, members.size());
      for (std::size_t idx : rng.sample_indices(members.size(), take)) {
        Document& d = docs[members[idx]];
        d.text += " " + detail::bridge_sentence(bridge);
        bool present = false;
        for (const auto& e : d.ground_truth_entities) {
          if (e.canonical_name == bridge.canonical_name) present = true;
        }
        if (!present) d.ground_truth_entities.push_back(bridge);
      }
    }
  }

  return docs;
}

// Union dictionary for entity extraction: tenant pools, the full bridge pool
// range, and every ground-truth entity present in the corpus. Sorted by name,
// first category wins on duplicates.
inline std::vector<EntitySpec> build_dictionary(
    const std::vector<Document>& docs) {
  std::map<std::string, EntitySpec> by_name;
  auto add = [&](const EntitySpec& e) {
    by_name.emplace(e.canonical_name, e);
  };
  for (const auto& [tenant, pool] : entity_pools()) {
    (void)tenant;
    for (const auto& e : pool) add(e);
  }
  for (const auto& e : bridge_pool_selection(40)) add(e);
  for (const auto& d : docs) {
    for (const auto& e : d.ground_truth_entities) add(e);
  }
  std::vector<EntitySpec> out;
  out.reserve(by_name.size());
  for (auto& [name, spec] : by_name) {
    (void)name;
    out.push_back(spec);
  }
  return out;
}

}  // namespace pivotbench
