#include "holesim/cluster_manager.hpp"

#include <algorithm>
#include <optional>

#include "holesim/error.hpp"

namespace holesim {

void add_sensor(Cluster& cluster, NodeId sensor) {
  if (std::find(cluster.members.begin(), cluster.members.end(), sensor) != cluster.members.end())
    throw DomainError("add_sensor: sensor " + std::to_string(sensor) + " already in cluster " +
                      std::to_string(cluster.id));
  cluster.members.push_back(sensor);
}

NodeId remove_sensor(Cluster& cluster, std::size_t index) {
  if (index >= cluster.members.size())
    throw DomainError("remove_sensor: index " + std::to_string(index) + " out of range for cluster of size " +
                      std::to_string(cluster.members.size()));
  const NodeId id = cluster.members[index];
  cluster.members.erase(cluster.members.begin() + static_cast<std::ptrdiff_t>(index));
  return id;
}

void move_sensor(Cluster& source, Cluster& target, std::size_t index) {
  if (index >= source.members.size())
    throw DomainError("move_sensor: index " + std::to_string(index) + " out of range");
  const NodeId id = source.members[index];
  add_sensor(target, id);
  source.members.erase(source.members.begin() + static_cast<std::ptrdiff_t>(index));
}

std::size_t find_target_cluster(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw DomainError("find_target_cluster: no clusters");
  return static_cast<std::size_t>(std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
}

std::size_t find_source_cluster(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw DomainError("find_source_cluster: no clusters");
  return static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

namespace {

std::vector<std::size_t> sizes_of(std::span<const Cluster> clusters) {
  std::vector<std::size_t> s;
  s.reserve(clusters.size());
  for (const auto& c : clusters) s.push_back(c.size());
  return s;
}

// Candidate tiers for cluster `self`: same zone, then neighboring zones. Without a zone graph
// every other cluster is in the first tier.
std::vector<std::vector<std::size_t>> tiers_for(std::span<const Cluster> clusters, std::size_t self,
                                                const ZoneGraph* zones) {
  std::vector<std::size_t> same, near;
  const ZoneId home = clusters[self].zone;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    if (k == self) continue;
    if (!zones || clusters[k].zone == home) {
      same.push_back(k);
    } else if (home < zones->size()) {
      const auto& adj = (*zones)[home];
      if (std::find(adj.begin(), adj.end(), clusters[k].zone) != adj.end()) near.push_back(k);
    }
  }
  return {std::move(same), std::move(near)};
}

}  // namespace

std::size_t find_target_cluster(std::span<const Cluster> clusters) {
  const auto s = sizes_of(clusters);
  return find_target_cluster(std::span<const std::size_t>(s));
}

std::size_t find_source_cluster(std::span<const Cluster> clusters) {
  const auto s = sizes_of(clusters);
  return find_source_cluster(std::span<const std::size_t>(s));
}

MigrationPlan manage_cluster_load(std::span<const Cluster> clusters, std::size_t phi_min, std::size_t phi_max,
                                  const ZoneGraph* zones) {
  if (!(phi_min < phi_max)) throw DomainError("manage_cluster_load: requires phi_min < phi_max");
  MigrationPlan plan;
  // Working membership so that later decisions see earlier moves.
  std::vector<std::vector<NodeId>> members;
  members.reserve(clusters.size());
  for (const auto& c : clusters) members.push_back(c.members);

  auto pick = [&](const std::vector<std::size_t>& candidates, bool largest) -> std::optional<std::size_t> {
    if (candidates.empty()) return std::nullopt;
    std::vector<std::size_t> sizes;
    for (std::size_t k : candidates) sizes.push_back(members[k].size());
    const std::size_t at = largest ? find_source_cluster(std::span<const std::size_t>(sizes))
                                   : find_target_cluster(std::span<const std::size_t>(sizes));
    return candidates[at];
  };

  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const std::size_t size = members[c].size();
    if (size > phi_max) {
      for (const auto& tier : tiers_for(clusters, c, zones)) {
        const auto target = pick(tier, false);
        if (!target || members[*target].size() + 1 > phi_max) continue;
        const NodeId s = members[c].front();
        members[c].erase(members[c].begin());
        members[*target].push_back(s);
        plan.moves.push_back({s, c, *target});
        break;
      }
    } else if (size < phi_min) {
      for (const auto& tier : tiers_for(clusters, c, zones)) {
        const auto source = pick(tier, true);
        if (!source || members[*source].size() < phi_min + 1) continue;
        const NodeId s = members[*source].front();
        members[*source].erase(members[*source].begin());
        members[c].push_back(s);
        plan.moves.push_back({s, *source, c});
        break;
      }
    }
  }
  return plan;
}

void apply_plan(std::vector<Cluster>& clusters, const MigrationPlan& plan) {
  for (const auto& m : plan.moves) {
    if (m.source >= clusters.size() || m.target >= clusters.size())
      throw DomainError("apply_plan: cluster index out of range");
    auto& src = clusters[m.source].members;
    const auto it = std::find(src.begin(), src.end(), m.sensor);
    if (it == src.end())
      throw DomainError("apply_plan: sensor " + std::to_string(m.sensor) + " not in source cluster");
    move_sensor(clusters[m.source], clusters[m.target], static_cast<std::size_t>(it - src.begin()));
  }
}

StabilityResult run_to_stability(std::vector<Cluster> clusters, std::size_t phi_min, std::size_t phi_max,
                                 std::size_t max_rounds, const ZoneGraph* zones) {
  if (max_rounds < 1) throw DomainError("run_to_stability: max_rounds must be at least 1");
  StabilityResult r;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    r.rounds_used = round;
    const MigrationPlan plan = manage_cluster_load(clusters, phi_min, phi_max, zones);
    if (plan.empty()) {
      r.balanced = true;
      break;
    }
    apply_plan(clusters, plan);
  }
  r.clusters = std::move(clusters);
  return r;
}

ClusterManager::ClusterManager(std::size_t min_threshold, std::size_t max_threshold)
    : min_(min_threshold), max_(max_threshold) {
  if (!(min_ < max_)) throw DomainError("ClusterManager: requires min_threshold < max_threshold");
}

std::size_t ClusterManager::add_cluster(Cluster cluster) {
  for (NodeId s : cluster.members)
    for (const auto& c : clusters_)
      if (std::find(c.members.begin(), c.members.end(), s) != c.members.end())
        throw DomainError("add_cluster: sensor " + std::to_string(s) + " already assigned");
  cluster.min_threshold = min_;
  cluster.max_threshold = max_;
  clusters_.push_back(std::move(cluster));
  return clusters_.size() - 1;
}

void ClusterManager::add_sensor(std::size_t cluster, NodeId sensor) {
  if (cluster >= clusters_.size()) throw DomainError("add_sensor: no such cluster");
  for (const auto& c : clusters_)
    if (std::find(c.members.begin(), c.members.end(), sensor) != c.members.end())
      throw DomainError("add_sensor: sensor " + std::to_string(sensor) + " already assigned");
  holesim::add_sensor(clusters_[cluster], sensor);
}

NodeId ClusterManager::remove_sensor(std::size_t cluster, std::size_t index) {
  if (cluster >= clusters_.size()) throw DomainError("remove_sensor: no such cluster");
  return holesim::remove_sensor(clusters_[cluster], index);
}

void ClusterManager::move_sensor(std::size_t source, std::size_t target, std::size_t index) {
  if (source >= clusters_.size() || target >= clusters_.size()) throw DomainError("move_sensor: no such cluster");
  holesim::move_sensor(clusters_[source], clusters_[target], index);
}

MigrationPlan ClusterManager::manage_cluster_load(const ZoneGraph* zones) const {
  return holesim::manage_cluster_load(clusters_, min_, max_, zones);
}

std::size_t ClusterManager::total_members() const {
  std::size_t n = 0;
  for (const auto& c : clusters_) n += c.size();
  return n;
}

std::string plan_to_csv(const MigrationPlan& plan, std::span<const Cluster> clusters) {
  std::string out = "sensor_id,from,to\n";
  for (const auto& m : plan.moves) {
    const auto from = m.source < clusters.size() ? clusters[m.source].id : static_cast<ClusterId>(m.source);
    const auto to = m.target < clusters.size() ? clusters[m.target].id : static_cast<ClusterId>(m.target);
    out += std::to_string(m.sensor) + "," + std::to_string(from) + "," + std::to_string(to) + "\n";
  }
  return out;
}

}  // namespace holesim
