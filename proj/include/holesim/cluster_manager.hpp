#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "holesim/world.hpp"

namespace holesim {

struct MigrationMove {
  NodeId sensor = 0;
  std::size_t source = 0;  // index into the cluster list the plan was built from
  std::size_t target = 0;

  friend bool operator==(const MigrationMove&, const MigrationMove&) = default;
};

struct MigrationPlan {
  std::vector<MigrationMove> moves;

  bool empty() const { return moves.empty(); }
  std::size_t size() const { return moves.size(); }
};

// neighbors[z] lists the zones adjacent to zone z.
using ZoneGraph = std::vector<std::vector<ZoneId>>;

void add_sensor(Cluster& cluster, NodeId sensor);
NodeId remove_sensor(Cluster& cluster, std::size_t index);
void move_sensor(Cluster& source, Cluster& target, std::size_t index);

std::size_t find_target_cluster(std::span<const std::size_t> sizes);
std::size_t find_source_cluster(std::span<const std::size_t> sizes);
std::size_t find_target_cluster(std::span<const Cluster> clusters);
std::size_t find_source_cluster(std::span<const Cluster> clusters);

// One balancing pass in cluster index order. Over-max clusters push their first member to the
// smallest cluster that can take it; under-min clusters pull the first member of the largest cluster
// that stays >= phi_min afterwards. Candidates are searched in the same zone first, then in
// neighboring zones when `zones` is given. Sizes track the plan as it grows.
MigrationPlan manage_cluster_load(std::span<const Cluster> clusters, std::size_t phi_min, std::size_t phi_max,
                                  const ZoneGraph* zones = nullptr);

// Applies moves in order. Throws DomainError if a move names a sensor missing from its source.
void apply_plan(std::vector<Cluster>& clusters, const MigrationPlan& plan);

struct StabilityResult {
  std::vector<Cluster> clusters;
  std::size_t rounds_used = 0;
  bool balanced = false;  // last plan was empty
};

StabilityResult run_to_stability(std::vector<Cluster> clusters, std::size_t phi_min, std::size_t phi_max,
                                 std::size_t max_rounds, const ZoneGraph* zones = nullptr);

// Holds thresholds and clusters together and enforces field-wide membership uniqueness.
class ClusterManager {
public:
  ClusterManager(std::size_t min_threshold, std::size_t max_threshold);

  std::size_t add_cluster(Cluster cluster);
  void add_sensor(std::size_t cluster, NodeId sensor);
  NodeId remove_sensor(std::size_t cluster, std::size_t index);
  void move_sensor(std::size_t source, std::size_t target, std::size_t index);

  MigrationPlan manage_cluster_load(const ZoneGraph* zones = nullptr) const;
  void apply(const MigrationPlan& plan) { apply_plan(clusters_, plan); }

  const std::vector<Cluster>& clusters() const { return clusters_; }
  std::size_t min_threshold() const { return min_; }
  std::size_t max_threshold() const { return max_; }
  std::size_t total_members() const;

private:
  std::size_t min_;
  std::size_t max_;
  std::vector<Cluster> clusters_;
};

std::string plan_to_csv(const MigrationPlan& plan, std::span<const Cluster> clusters);

}  // namespace holesim
