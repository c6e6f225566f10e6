#pragma once

#include <vector>

#include "holesim/world.hpp"

namespace fixtures {

// Single zone, single cluster covering the whole field; one live node per position.
inline holesim::Field one_cluster_field(double width, double height, const std::vector<holesim::Position>& at,
                                        double sensing_radius = 5.0, double cell = 2.0, double energy = 6.0) {
  holesim::Field f;
  f.config.field_width = width;
  f.config.field_height = height;
  f.config.sensing_radius = sensing_radius;
  f.config.grid_cell_size = cell;
  f.config.initial_energy = energy;
  holesim::Cluster c;
  c.id = 0;
  c.zone = 0;
  c.region = f.config.bounds();
  c.head_position = c.region.center();
  c.min_threshold = 0;
  c.max_threshold = at.size() + 10;
  for (std::size_t k = 0; k < at.size(); ++k) {
    holesim::SensorNode n;
    n.id = static_cast<holesim::NodeId>(k);
    n.position = at[k];
    n.energy = energy;
    f.nodes.push_back(n);
    c.members.push_back(n.id);
  }
  f.clusters.push_back(c);
  holesim::Zone z;
  z.id = 0;
  z.region = f.config.bounds();
  z.clusters = {0};
  f.zones.push_back(z);
  return f;
}

inline holesim::Cluster cluster_of_size(holesim::ClusterId id, std::size_t size, holesim::NodeId& next_id) {
  holesim::Cluster c;
  c.id = id;
  for (std::size_t k = 0; k < size; ++k) c.members.push_back(next_id++);
  return c;
}

inline std::vector<holesim::Cluster> clusters_with_sizes(const std::vector<std::size_t>& sizes) {
  std::vector<holesim::Cluster> out;
  holesim::NodeId next = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k)
    out.push_back(cluster_of_size(static_cast<holesim::ClusterId>(k), sizes[k], next));
  return out;
}

inline std::vector<std::size_t> sizes_of(const std::vector<holesim::Cluster>& clusters) {
  std::vector<std::size_t> out;
  for (const auto& c : clusters) out.push_back(c.size());
  return out;
}

}  // namespace fixtures
