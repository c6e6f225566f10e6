#include <doctest.h>

#include <vector>

#include "fixtures.hpp"
#include "holesim/error.hpp"
#include "holesim/ssoa.hpp"

using namespace holesim;

namespace {

// A 20 m strip of ten 2 m cells, radius 2: nodes at 2,6,10,14,18 cover every cell exactly once.
Field strip(std::vector<double> xs) {
  std::vector<Position> at;
  for (double x : xs) at.push_back({x, 1.0});
  return fixtures::one_cluster_field(20, 2, at, 2.0);
}

void kill(Field& f, NodeId id) {
  f.nodes[id].alive = false;
  std::erase(f.clusters[0].members, id);
}

}  // namespace

TEST_SUITE("ssoa") {
  TEST_CASE("no holes: nothing moves and nothing is charged") {
    auto f = strip({2, 6, 10, 14, 18});
    EnergyLedger ledger(f.nodes);
    const auto r = ssoa_recover(f, 0, SsoaParams{}, ledger);
    CHECK(r.recovery.recovered);
    CHECK(r.tiers_used == SsoaTier::none);
    CHECK(r.recovery.total_distance == 0.0);
    CHECK(r.node_processing_charges == 0.0);
    CHECK(ledger.category_total(EnergyCategory::processing) == 0.0);
  }

  TEST_CASE("a small hole beside a spare node closes in the single tier") {
    // The spare at 8 keeps cell 9 covered when node 2 (x=10) fails, leaving cell 11 as the only hole.
    // The spare at 16 lets node 3 (x=14) lean into the hole without opening cell 15.
    auto f = strip({2, 6, 10, 14, 18, 8, 16});
    kill(f, 2);
    EnergyLedger ledger(f.nodes);
    const auto r = ssoa_recover(f, 0, SsoaParams{}, ledger);
    CHECK(r.recovery.recovered);
    CHECK(r.tiers_used == SsoaTier::single_tier);
    CHECK(r.redeploy_rounds == 0);
    CHECK(r.node_processing_charges > 0.0);
    for (double d : r.recovery.distance_by_node) CHECK(d <= f.config.sensing_radius + 1e-9);
  }

  TEST_CASE("a concentrated failure falls through to global redeployment") {
    auto f = strip({2, 6, 10, 14, 18});
    kill(f, 2);
    kill(f, 3);
    EnergyLedger ledger(f.nodes);
    SsoaParams p;
    p.max_redeploy_rounds = 50;
    const auto r = ssoa_recover(f, 0, p, ledger);
    CHECK(r.tiers_used == SsoaTier::global_redeploy);
    CHECK(r.redeploy_rounds > 0);
    CHECK(r.node_processing_charges > 0.0);
    CHECK(r.node_cost > 0.0);
  }

  TEST_CASE("property: scattered single failures recover in phase 1 with bounded displacement") {
    // Lattice with spacing 4 and radius 5 is redundant enough that any one failure is local.
    std::vector<Position> at;
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 6; ++i) at.push_back({2.0 + 4 * i, 2.0 + 4 * j});
    for (NodeId victim : {0u, 7u, 14u, 21u, 35u}) {
      auto f = fixtures::one_cluster_field(24, 24, at, 5.0);
      kill(f, victim);
      EnergyLedger ledger(f.nodes);
      const auto r = ssoa_recover(f, 0, SsoaParams{}, ledger);
      CHECK(r.recovery.recovered);
      CHECK(r.tiers_used != SsoaTier::global_redeploy);
      for (double d : r.recovery.distance_by_node) CHECK(d <= 5.0 + 1e-9);
    }
  }

  TEST_CASE("compare_runs") {
    MatchedRun h{Protocol::hybrid, 42, {}};
    MatchedRun s{Protocol::ssoa, 42, {}};
    h.metrics.recovery_time_steps = s.metrics.recovery_time_steps = 0;
    h.metrics.final_coverage_fraction = s.metrics.final_coverage_fraction = 1.0;
    h.metrics.mean_node_energy_spent_fraction = s.metrics.mean_node_energy_spent_fraction = 0.2;
    auto row = compare_runs(h, s);
    CHECK_FALSE(row.recovery_time_ratio.has_value());
    CHECK(*row.coverage_ratio == 1.0);
    CHECK(*row.energy_ratio == 1.0);

    h.metrics.mean_node_energy_spent_fraction = 0.05;
    row = compare_runs(h, s);
    CHECK(*row.energy_ratio == doctest::Approx(0.25));

    s.fingerprint = 43;
    CHECK_THROWS_AS(compare_runs(h, s), DomainError);
    CHECK_THROWS_AS(compare_runs(s, h), DomainError);
  }
}
