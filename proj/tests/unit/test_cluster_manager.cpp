#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "holesim/cluster_manager.hpp"
#include "holesim/error.hpp"

using namespace holesim;
using fixtures::clusters_with_sizes;
using fixtures::sizes_of;

namespace {

std::size_t total(const std::vector<Cluster>& cs) {
  std::size_t n = 0;
  for (const auto& c : cs) n += c.size();
  return n;
}

}  // namespace

TEST_SUITE("cluster_manager") {
  TEST_CASE("add_sensor appends and rejects duplicates") {
    Cluster c;
    add_sensor(c, 1);
    CHECK(c.members == std::vector<NodeId>{1});
    add_sensor(c, 2);
    CHECK(c.members == std::vector<NodeId>{1, 2});
    CHECK_THROWS_AS(add_sensor(c, 1), DomainError);
  }

  TEST_CASE("remove_sensor by index") {
    Cluster c;
    c.members = {1, 2};
    Cluster d = c;
    CHECK(remove_sensor(c, 0) == 1);
    CHECK(c.members == std::vector<NodeId>{2});
    CHECK(remove_sensor(d, 1) == 2);
    CHECK(d.members == std::vector<NodeId>{1});
    Cluster one;
    one.members = {1};
    CHECK_THROWS_AS(remove_sensor(one, 5), DomainError);
  }

  TEST_CASE("move_sensor composes remove and add") {
    Cluster a, b;
    a.members = {1, 2};
    b.members = {3};
    move_sensor(a, b, 0);
    CHECK(a.members == std::vector<NodeId>{2});
    CHECK(b.members == std::vector<NodeId>{3, 1});

    Cluster s, e;
    s.members = {1};
    move_sensor(s, e, 0);
    CHECK(s.members.empty());
    CHECK(e.members == std::vector<NodeId>{1});

    Cluster t, u;
    t.members = {1};
    CHECK_THROWS_AS(move_sensor(t, u, 2), DomainError);
    CHECK(t.members == std::vector<NodeId>{1});
  }

  TEST_CASE("find_target_cluster and find_source_cluster") {
    using V = std::vector<std::size_t>;
    CHECK(find_target_cluster(V{5, 3, 7}) == 1);
    CHECK(find_target_cluster(V{3, 3, 7}) == 0);
    CHECK(find_target_cluster(V{9}) == 0);
    CHECK(find_source_cluster(V{5, 3, 7}) == 2);
    CHECK(find_source_cluster(V{7, 7, 3}) == 0);
    CHECK(find_source_cluster(V{0, 0}) == 0);
    CHECK_THROWS_AS(find_target_cluster(V{}), DomainError);
  }

  TEST_CASE("manage_cluster_load hand traces") {
    auto over = clusters_with_sizes({5, 1});
    const auto plan = manage_cluster_load(over, 2, 4);
    REQUIRE(plan.size() == 1);
    CHECK(plan.moves[0].source == 0);
    CHECK(plan.moves[0].target == 1);
    apply_plan(over, plan);
    CHECK(sizes_of(over) == std::vector<std::size_t>{4, 2});

    CHECK(manage_cluster_load(clusters_with_sizes({3, 2, 4}), 2, 4).empty());
    CHECK(manage_cluster_load(clusters_with_sizes({2, 1}), 2, 4).empty());
    CHECK_THROWS_AS(manage_cluster_load(clusters_with_sizes({2, 1}), 4, 4), DomainError);
  }

  TEST_CASE("run_to_stability") {
    const auto balanced = run_to_stability(clusters_with_sizes({3, 3}), 2, 4, 10);
    CHECK(balanced.rounds_used == 1);
    CHECK(balanced.balanced);
    CHECK(sizes_of(balanced.clusters) == std::vector<std::size_t>{3, 3});

    const auto spread = run_to_stability(clusters_with_sizes({10, 0, 0}), 2, 4, 10);
    CHECK(spread.balanced);
    for (auto s : sizes_of(spread.clusters)) CHECK((s >= 2 && s <= 4));

    // Infeasible: the pulls stop once no donor can spare a node, short of max_rounds.
    const auto starved = run_to_stability(clusters_with_sizes({3, 0, 0}), 2, 4, 5);
    CHECK(starved.rounds_used <= 5);
    const auto sizes = sizes_of(starved.clusters);
    CHECK(std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s < 2; }));
  }

  TEST_CASE("neighbor zones are searched after the own zone") {
    // Zone 0 holds clusters 0,1; zone 1 holds cluster 2. Only zone 1 can donate.
    auto cs = clusters_with_sizes({2, 1, 4});
    cs[0].zone = 0;
    cs[1].zone = 0;
    cs[2].zone = 1;
    const ZoneGraph isolated{{}, {}};
    CHECK(manage_cluster_load(cs, 2, 4, &isolated).empty());
    const ZoneGraph graph{{1}, {0}};
    const auto plan = manage_cluster_load(cs, 2, 4, &graph);
    REQUIRE(plan.size() == 1);
    CHECK(plan.moves[0].source == 2);
    CHECK(plan.moves[0].target == 1);
  }

  TEST_CASE("ClusterManager enforces field-wide uniqueness") {
    ClusterManager m(2, 4);
    Cluster a;
    a.members = {1, 2};
    m.add_cluster(a);
    m.add_cluster(Cluster{});
    CHECK_THROWS_AS(m.add_sensor(1, 2), DomainError);
    m.move_sensor(0, 1, 0);
    CHECK(m.total_members() == 2);
    CHECK_THROWS_AS(ClusterManager(4, 4), DomainError);
  }

  TEST_CASE("property: conservation, safety, convergence and determinism") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t k = 1 + gen() % 6;
      const std::size_t phi_min = 1 + gen() % 5;
      const std::size_t phi_max = phi_min + 1 + gen() % 5;
      const std::size_t n = k * phi_min + gen() % (k * (phi_max - phi_min) + 1);
      // Random split of n into k clusters.
      std::vector<std::size_t> sizes(k, 0);
      for (std::size_t i = 0; i < n; ++i) ++sizes[gen() % k];
      const auto start = clusters_with_sizes(sizes);

      const auto plan = manage_cluster_load(start, phi_min, phi_max);
      CHECK(plan.moves == manage_cluster_load(start, phi_min, phi_max).moves);
      auto after = start;
      apply_plan(after, plan);
      CHECK(total(after) == n);
      for (std::size_t c = 0; c < k; ++c) {
        const bool was_in = start[c].size() >= phi_min && start[c].size() <= phi_max;
        const bool now_in = after[c].size() >= phi_min && after[c].size() <= phi_max;
        if (was_in) CHECK(now_in);
      }

      const auto r = run_to_stability(start, phi_min, phi_max, std::max<std::size_t>(n, 1));
      CHECK(r.balanced);
      CHECK(r.rounds_used <= std::max<std::size_t>(n, 1));
      CHECK(total(r.clusters) == n);
      std::set<NodeId> ids;
      for (const auto& c : r.clusters) {
        CHECK((c.size() >= phi_min && c.size() <= phi_max));
        ids.insert(c.members.begin(), c.members.end());
      }
      CHECK(ids.size() == n);
    }
  }

  TEST_CASE("plan csv") {
    const auto cs = clusters_with_sizes({5, 1});
    const auto csv = plan_to_csv(manage_cluster_load(cs, 2, 4), cs);
    CHECK(csv.rfind("sensor_id,", 0) == 0);
  }
}
