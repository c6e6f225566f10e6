#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "holesim/coverage.hpp"
#include "holesim/engine.hpp"
#include "holesim/error.hpp"

using namespace holesim;

namespace {

Scenario defaults(std::size_t holes, Protocol p = Protocol::hybrid) {
  Scenario s;
  s.holes_to_inject = holes;
  s.protocol = p;
  return s;
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("default layout is valid and matches the configured shape") {
    const Scenario s;
    CHECK(validate_scenario(s).empty());
    const Field f = build_field(s);
    CHECK(f.zones.size() == 2);
    CHECK(f.clusters.size() == 10);
    CHECK(f.nodes.size() == 2 * 674);
    CHECK(validate_field(f.nodes, f.clusters, f.zones, f.config).empty());
    std::size_t zone0 = 0;
    for (ClusterId c : f.zones[0].clusters) zone0 += f.clusters[c].size();
    CHECK(zone0 == 674);
    CHECK(test_cluster_id(s) == 2);
    CHECK(coverage_fraction(mark_covered(initialize_grid(f.config), f.nodes, 5.0)) == 1.0);
  }

  TEST_CASE("build_field is deterministic per seed") {
    Scenario s;
    const Field a = build_field(s);
    const Field b = build_field(s);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) CHECK(a.nodes[i].position == b.nodes[i].position);
  }

  TEST_CASE("validate_scenario names threshold and energy problems") {
    Scenario s;
    s.layout.phi_min = 150;
    s.layout.phi_max = 120;
    s.field.initial_energy = -1;
    const auto v = validate_scenario(s);
    CHECK(std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.kind == Violation::Kind::thresholds; }));
    CHECK(v.size() >= 2);
    CHECK_THROWS_AS(run_scenario(s), ConfigError);
  }

  TEST_CASE("inject_holes") {
    Scenario s;
    Field f = build_field(s);
    const Field untouched = f;
    CHECK(inject_holes(f, 2, 0, HolePlacement::uniform_in_test_cluster, 1).empty());
    CHECK(f.clusters[2].members == untouched.clusters[2].members);

    const auto a = inject_holes(f, 2, 20, HolePlacement::uniform_in_test_cluster, 5);
    Field g = untouched;
    const auto b = inject_holes(g, 2, 20, HolePlacement::uniform_in_test_cluster, 5);
    CHECK(a == b);
    CHECK(std::set<NodeId>(a.begin(), a.end()).size() == 20);
    for (NodeId id : a) CHECK_FALSE(f.nodes[id].alive);
    CHECK(f.clusters[2].size() == untouched.clusters[2].size() - 20);

    Field h = untouched;
    const std::size_t all = h.clusters[2].size();
    CHECK(inject_holes(h, 2, all, HolePlacement::concentrated, 1).size() == all);
    CHECK(h.clusters[2].members.empty());
    const auto map = mark_covered(initialize_grid(h.config), h.nodes, 5.0);
    CHECK(coverage_fraction(map, h.clusters[2].region) < 1.0);

    Field k = untouched;
    CHECK_THROWS_AS(inject_holes(k, 2, all + 1, HolePlacement::concentrated, 1), DomainError);
  }

  TEST_CASE("zero holes: T_r is zero and coverage is unchanged") {
    for (Protocol p : {Protocol::hybrid, Protocol::ssoa}) {
      const auto r = run_scenario(defaults(0, p));
      CHECK(r.metrics.recovery_time_steps == 0);
      CHECK(r.metrics.recovered);
      CHECK(r.metrics.final_coverage_fraction == r.metrics.initial_coverage_fraction);
    }
  }

  TEST_CASE("holes above the migration trigger recover locally; below it they register migrants") {
    // The test cluster holds 135 nodes; phi_min is 124, so 11 losses stay above the trigger.
    const auto local = run_scenario(defaults(10));
    CHECK(local.metrics.recovered);
    CHECK(local.metrics.registrations_intra + local.metrics.registrations_inter == 0);

    const auto migrating = run_scenario(defaults(20));
    CHECK(migrating.metrics.recovered);
    CHECK(migrating.metrics.registrations_intra + migrating.metrics.registrations_inter > 0);
    CHECK(migrating.metrics.recovery_time_steps > local.metrics.recovery_time_steps);
  }

  TEST_CASE("hybrid runs keep the hole count non-increasing and charge nodes no processing") {
    for (std::size_t holes : {15, 40}) {
      const auto r = run_scenario(defaults(holes));
      const auto& h = r.holes_per_step;
      for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] <= h[i - 1]);
      CHECK(r.metrics.total_computational_cost == 0.0);
      CHECK(r.metrics.network_computational_cost > 0.0);
    }
  }

  TEST_CASE("ssoa charges processing to nodes whenever holes exist") {
    const auto r = run_scenario(defaults(15, Protocol::ssoa));
    CHECK(r.metrics.total_computational_cost > 0.0);
    CHECK(r.metrics.registrations_intra + r.metrics.registrations_inter == 0);
  }

  TEST_CASE("determinism: identical metrics and fingerprint") {
    for (Protocol p : {Protocol::hybrid, Protocol::ssoa}) {
      const auto a = run_scenario(defaults(25, p));
      const auto b = run_scenario(defaults(25, p));
      CHECK(a.fingerprint == b.fingerprint);
      CHECK(results_csv_row(p, 25, 1, a.metrics) == results_csv_row(p, 25, 1, b.metrics));
      CHECK(a.registration_log == b.registration_log);
      CHECK(a.ledger_csv == b.ledger_csv);
    }
  }

  TEST_CASE("matched hybrid and ssoa runs share a fingerprint") {
    const auto h = run_scenario(defaults(20, Protocol::hybrid));
    const auto s = run_scenario(defaults(20, Protocol::ssoa));
    CHECK(h.fingerprint == s.fingerprint);
    CHECK(h.killed == s.killed);
    Scenario other = defaults(20);
    other.field.rng_seed = 2;
    CHECK(run_scenario(other).fingerprint != h.fingerprint);
  }

  TEST_CASE("registration bytes reconcile with the protocol byte count") {
    const auto r = run_scenario(defaults(30));
    std::size_t sum = 0;
    std::size_t lines = 0;
    std::size_t start = r.registration_log.find('\n') + 1;
    while (start < r.registration_log.size()) {
      const std::size_t end = r.registration_log.find('\n', start);
      const std::string line = r.registration_log.substr(start, end - start);
      sum += std::stoul(line.substr(line.rfind(',') + 1));
      ++lines;
      start = end + 1;
    }
    CHECK(lines == r.metrics.registrations_intra + r.metrics.registrations_inter);
    CHECK(sum == r.metrics.protocol_bytes);
  }

  TEST_CASE("sweep shapes and seeds") {
    Scenario base;
    const auto one = sweep(base, SweepAxis::holes, {10}, {Protocol::hybrid});
    REQUIRE(one.size() == 1);
    CHECK(one[0].axis_value == 10);

    const auto rows = sweep(base, SweepAxis::holes, {10, 20}, {Protocol::hybrid, Protocol::ssoa});
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) CHECK(r.seed == base.seed() + (r.axis_value == 10 ? 0 : 1));
    CHECK(rows[0].report.fingerprint != 0);

    const auto dens = sweep(base, SweepAxis::density, {130}, {Protocol::hybrid});
    REQUIRE(dens.size() == 1);
    const auto csv = results_csv(dens);
    CHECK(csv.rfind(results_csv_header() + "\n", 0) == 0);
    CHECK(csv.find("\nhybrid,130,") != std::string::npos);
  }

  TEST_CASE("results csv header is pinned") {
    CHECK(results_csv_header() == "protocol,axis_value,seed,T_r,coverage,mean_dist_m,energy_frac,comp_cost,reg_intra,reg_inter");
    ScenarioMetrics m;
    m.recovery_time_steps = 12;
    m.final_coverage_fraction = 0.5;
    m.registrations_inter = 3;
    CHECK(results_csv_row(Protocol::ssoa, 2.5, 7, m) == "ssoa,2.5,7,12,0.500000,0.000000,0.000000,0.000000,0,3");
  }

  TEST_CASE("placement names") {
    CHECK(placement_from_string("uniform") == HolePlacement::uniform_in_test_cluster);
    CHECK(placement_from_string("concentrated") == HolePlacement::concentrated);
    CHECK_THROWS_AS(placement_from_string("spiral"), ConfigError);
    CHECK(protocol_from_string("ssoa") == Protocol::ssoa);
    CHECK_THROWS_AS(protocol_from_string("tcp"), ConfigError);
  }
}
