#include "holesim/world.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "holesim/error.hpp"

namespace holesim {

Position Rect::clamp(Position p) const {
  return {std::clamp(p.x, x0, x1), std::clamp(p.y, y0, y1)};
}

double Rect::distance_to(Position p) const {
  const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
  const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
  return std::hypot(dx, dy);
}

std::size_t Field::live_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const SensorNode& n) { return n.alive; }));
}

std::size_t nearest_cluster_head(Position p, std::span<const Position> heads) {
  if (heads.empty()) throw DomainError("nearest_cluster_head: empty head list");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < heads.size(); ++i) {
    // squared distance keeps exact ties exact
    const double dx = p.x - heads[i].x;
    const double dy = p.y - heads[i].y;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::config: return "config";
    case Violation::Kind::out_of_bounds: return "out_of_bounds";
    case Violation::Kind::duplicate_node_id: return "duplicate_node_id";
    case Violation::Kind::duplicate_membership: return "duplicate_membership";
    case Violation::Kind::dangling_member: return "dangling_member";
    case Violation::Kind::thresholds: return "thresholds";
    case Violation::Kind::energy: return "energy";
    case Violation::Kind::velocity: return "velocity";
    case Violation::Kind::zone_membership: return "zone_membership";
  }
  return "unknown";
}

bool divides_evenly(double value, double step) {
  if (!(step > 0.0) || !(value > 0.0)) return false;
  const double ratio = value / step;
  return std::abs(ratio - std::round(ratio)) < 1e-9 * std::max(1.0, ratio);
}

std::vector<Violation> validate_config(const FieldConfig& c) {
  std::vector<Violation> out;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      out.push_back({Violation::Kind::config, std::string(name) + " must be strictly positive"});
  };
  positive(c.field_width, "field_width");
  positive(c.field_height, "field_height");
  positive(c.sensing_radius, "sensing_radius");
  positive(c.transmission_range, "transmission_range");
  positive(c.grid_cell_size, "grid_cell_size");
  positive(c.packet_size, "packet_size");
  positive(c.initial_energy, "initial_energy");
  positive(c.tx_power, "tx_power");
  if (c.grid_cell_size > 0.0 && c.field_width > 0.0 && !divides_evenly(c.field_width, c.grid_cell_size))
    out.push_back({Violation::Kind::config, "grid_cell_size does not divide field_width"});
  if (c.grid_cell_size > 0.0 && c.field_height > 0.0 && !divides_evenly(c.field_height, c.grid_cell_size))
    out.push_back({Violation::Kind::config, "grid_cell_size does not divide field_height"});
  return out;
}

std::vector<Violation> validate_field(std::span<const SensorNode> nodes, std::span<const Cluster> clusters,
                                      std::span<const Zone> zones, const FieldConfig& config,
                                      double max_step) {
  std::vector<Violation> out = validate_config(config);
  const Rect bounds = config.bounds();

  std::unordered_set<NodeId> ids;
  for (const auto& n : nodes) {
    const std::string tag = "node " + std::to_string(n.id);
    if (!ids.insert(n.id).second)
      out.push_back({Violation::Kind::duplicate_node_id, tag + " appears more than once"});
    if (!bounds.contains(n.position))
      out.push_back({Violation::Kind::out_of_bounds,
                     tag + " at (" + std::to_string(n.position.x) + ", " + std::to_string(n.position.y) +
                         ") is outside the field"});
    if (n.energy < 0.0) out.push_back({Violation::Kind::energy, tag + " has negative energy"});
    if (n.energy == 0.0 && n.alive)
      out.push_back({Violation::Kind::energy, tag + " has no energy but is alive"});
    if (max_step >= 0.0 && n.velocity.magnitude() > max_step + 1e-12)
      out.push_back({Violation::Kind::velocity, tag + " velocity exceeds the step cap"});
  }

  std::unordered_map<NodeId, ClusterId> owner;
  for (const auto& c : clusters) {
    const std::string tag = "cluster " + std::to_string(c.id);
    if (!(c.min_threshold < c.max_threshold))
      out.push_back({Violation::Kind::thresholds, tag + " requires min_threshold < max_threshold"});
    for (NodeId m : c.members) {
      if (!ids.contains(m))
        out.push_back({Violation::Kind::dangling_member, tag + " lists unknown node " + std::to_string(m)});
      auto [it, fresh] = owner.emplace(m, c.id);
      if (!fresh)
        out.push_back({Violation::Kind::duplicate_membership,
                       "node " + std::to_string(m) + " is a member of clusters " + std::to_string(it->second) +
                           " and " + std::to_string(c.id)});
    }
  }

  if (!zones.empty()) {
    std::unordered_map<ClusterId, std::size_t> seen;
    for (const auto& z : zones)
      for (ClusterId c : z.clusters) ++seen[c];
    for (const auto& c : clusters) {
      const auto it = seen.find(c.id);
      const std::size_t count = it == seen.end() ? 0 : it->second;
      if (count != 1)
        out.push_back({Violation::Kind::zone_membership, "cluster " + std::to_string(c.id) + " belongs to " +
                                                             std::to_string(count) + " zones"});
    }
  }
  return out;
}

}  // namespace holesim
