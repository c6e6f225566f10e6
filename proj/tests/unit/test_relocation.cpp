#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "holesim/coverage.hpp"
#include "holesim/error.hpp"
#include "holesim/relocation.hpp"
#include "holesim/rng.hpp"

using namespace holesim;

TEST_SUITE("relocation") {
  TEST_CASE("pairwise_virtual_force around the threshold") {
    const auto eq = pairwise_virtual_force({0, 0}, {2, 0}, 2.0, 1.0, 1.0);
    CHECK(eq.fx == 0.0);
    CHECK(eq.fy == 0.0);
    const auto rep = pairwise_virtual_force({0, 0}, {1, 0}, 2.0, 1.0, 1.0);
    CHECK(rep.fx == doctest::Approx(-1.0));
    CHECK(rep.fy == doctest::Approx(0.0));
    const auto att = pairwise_virtual_force({0, 0}, {3, 0}, 2.0, 1.0, 1.0);
    CHECK(att.fx == doctest::Approx(1.0));
    CHECK(att.fy == doctest::Approx(0.0));
    const auto same = pairwise_virtual_force({1, 1}, {1, 1}, 2.0, 1.0, 1.0, 3);
    CHECK(same.magnitude() == doctest::Approx(2.0));
  }

  TEST_CASE("boundary_force pushes inward near edges") {
    const Rect field{0, 0, 100, 100};
    const auto center = boundary_force({50, 50}, field, 5.0, 1.0);
    CHECK(center.fx == 0.0);
    CHECK(center.fy == 0.0);
    const auto left = boundary_force({0, 50}, field, 5.0, 1.0);
    CHECK(left.fx == doctest::Approx(5.0));
    CHECK(left.fy == 0.0);
    const auto corner = boundary_force({1, 99}, field, 5.0, 1.0);
    CHECK(corner.fx > 0.0);
    CHECK(corner.fy < 0.0);
  }

  TEST_CASE("apply_velocity_step and step_toward") {
    const Rect big{-100, -100, 100, 100};
    CHECK(apply_velocity_step({0, 0}, {1, 2}, 0.5, big) == Position{0.5, 1.0});
    CHECK(apply_velocity_step({3, 4}, {7, 7}, 0.0, big) == Position{3, 4});
    CHECK(apply_velocity_step({2, 3}, {-1, 0}, 2.0, big) == Position{0, 3});
    CHECK(apply_velocity_step({2, 3}, {-10, 0}, 1.0, Rect{0, 0, 10, 10}) == Position{0, 3});

    CHECK(step_toward({1, 1}, {1, 1}, 1.0) == Velocity{0, 0});
    CHECK(step_toward({0, 0}, {10, 0}, 1.0) == Velocity{1, 0});
    CHECK(step_toward({0, 0}, {0.5, 0}, 1.0) == Velocity{0.5, 0});
    CHECK_THROWS_AS(step_toward({0, 0}, {1, 0}, 0.0), DomainError);
  }

  TEST_CASE("property: velocity step matches direct substitution") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-50, 50);
    const Rect big{-1e6, -1e6, 1e6, 1e6};
    for (int i = 0; i < 1000; ++i) {
      const Position p{u(gen), u(gen)};
      const Velocity v{u(gen), u(gen)};
      const double dt = std::abs(u(gen)) / 10;
      const Position q = apply_velocity_step(p, v, dt, big);
      CHECK(std::abs(q.x - (p.x + v.vx * dt)) <= 1e-9);
      CHECK(std::abs(q.y - (p.y + v.vy * dt)) <= 1e-9);
      const Position t{u(gen), u(gen)};
      const double dx = 0.1 + std::abs(u(gen)) / 10;
      CHECK(step_toward(p, t, dx).magnitude() <= dx + 1e-12);
    }
  }

  TEST_CASE("initial_deploy") {
    ForceParams fp;
    const Rect region{0, 0, 50, 50};
    const auto one = initial_deploy(1, region, 3, fp);
    REQUIRE(one.size() == 1);
    CHECK(region.distance_to(one[0]) == 0.0);
    CHECK(one[0].x >= fp.margin - 1e-9);
    CHECK(one[0].y >= fp.margin - 1e-9);
    CHECK(one[0].x <= 50 - fp.margin + 1e-9);
    CHECK(one[0].y <= 50 - fp.margin + 1e-9);

    ForceParams pair = fp;
    pair.neighbor_range = 1000;
    pair.max_rounds = 5000;
    const auto two = initial_deploy(2, Rect{0, 0, 200, 200}, 8, pair);
    CHECK(distance(two[0], two[1]) == doctest::Approx(pair.d_threshold).epsilon(0.01));

    CHECK(initial_deploy(30, region, 42, fp) == initial_deploy(30, region, 42, fp));
    CHECK_THROWS_AS(initial_deploy(0, region, 1, fp), DomainError);
  }

  TEST_CASE("property: initial_deploy packing sanity") {
    ForceParams fp;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Rect region{0, 0, 60, 60};
      const auto pts = initial_deploy(40, region, seed, fp);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(region.contains(pts[i]));
        for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK(distance(pts[i], pts[j]) >= fp.d_threshold / 2);
      }
    }
  }

  TEST_CASE("no holes at entry") {
    auto f = fixtures::one_cluster_field(6, 2, {{3, 1}}, 3.0);
    const auto r = recover_holes_hybrid(f, 0, HybridParams{});
    CHECK(r.recovered);
    CHECK(r.iterations_used == 0);
    CHECK(r.total_distance == 0.0);
  }

  TEST_CASE("one hole cell next to a member closes in one step of exactly dx") {
    // Cells centered at x=1,3,5 (cluster 0) and 7,9,11 (cluster 1), radius 2.
    // Node 0 at 2.5 reaches 1 and 3; cell 5 is the only hole in cluster 0. Node 1 belongs to cluster 1.
    auto f = fixtures::one_cluster_field(12, 2, {{2.5, 1}, {9, 1}}, 2.0);
    f.clusters[0].region = {0, 0, 6, 2};
    f.clusters[0].members = {0};
    Cluster other;
    other.id = 1;
    other.region = {6, 0, 12, 2};
    other.max_threshold = 5;
    other.members = {1};
    f.clusters.push_back(other);
    f.zones[0].clusters.push_back(1);

    HybridParams p;
    p.step_length = 0.5;
    const auto r = recover_holes_hybrid(f, 0, p);
    CHECK(r.recovered);
    CHECK(r.iterations_used == 1);
    CHECK(r.distance_by_node[0] == doctest::Approx(0.5));
    CHECK(r.distance_by_node[1] == 0.0);
    CHECK(f.nodes[0].position == Position{3, 1});
  }

  TEST_CASE("dead cluster never recovers and never moves") {
    auto f = fixtures::one_cluster_field(10, 10, {{5, 5}}, 2.0);
    f.nodes[0].alive = false;
    f.clusters[0].members.clear();
    HybridParams p;
    p.max_iterations = 25;
    const auto r = recover_holes_hybrid(f, 0, p);
    CHECK_FALSE(r.recovered);
    CHECK(r.iterations_used == 25);
    CHECK(r.total_distance == 0.0);
  }

  TEST_CASE("property: random single-cluster recoveries are monotone, bounded and in range") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      Rng rng(seed);
      const double side = 30.0;
      ForceParams fp;
      const std::size_t n = 14 + rng.below(10);
      auto f = fixtures::one_cluster_field(side, side, initial_deploy(n, Rect{0, 0, side, side}, seed, fp), 5.0);
      for (std::size_t k = 0; k < 3; ++k) {
        const NodeId victim = f.clusters[0].members[rng.below(f.clusters[0].members.size())];
        f.nodes[victim].alive = false;
        std::erase(f.clusters[0].members, victim);
      }
      HybridParams p;
      p.max_iterations = 300;
      std::vector<Position> before;
      for (const auto& node : f.nodes) before.push_back(node.position);

      HybridRecovery rec(f, 0, p);
      std::size_t last = rec.holes();
      while (rec.holes() > 0 && rec.result().iterations_used < p.max_iterations) {
        rec.iterate();
        CHECK(rec.holes() <= last);
        last = rec.holes();
        for (std::size_t i = 0; i < f.nodes.size(); ++i) {
          CHECK(distance(before[i], f.nodes[i].position) <= p.step_length + 1e-9);
          CHECK(f.config.bounds().contains(f.nodes[i].position));
          before[i] = f.nodes[i].position;
        }
      }
      CHECK(rec.result().iterations_used <= p.max_iterations);
      const auto& h = rec.result().holes_per_iteration;
      for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] <= h[i - 1]);
    }
  }
}
