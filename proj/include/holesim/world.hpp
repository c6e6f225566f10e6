#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace holesim {

using NodeId = std::uint32_t;
using ClusterId = std::uint32_t;
using ZoneId = std::uint32_t;

// Meters, continuous. Grid indices are derived from positions, never stored.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

// Meters per step.
struct Velocity {
  double vx = 0.0;
  double vy = 0.0;

  double magnitude() const { return std::hypot(vx, vy); }
  friend bool operator==(const Velocity&, const Velocity&) = default;
};

inline double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Axis-aligned rectangle, closed on all sides for containment checks.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  Position center() const { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }
  bool contains(Position p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  Position clamp(Position p) const;
  // Euclidean distance from p to the rectangle (0 inside).
  double distance_to(Position p) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct SensorNode {
  NodeId id = 0;
  Position position;
  Velocity velocity;
  double energy = 0.0;          // joules remaining
  ClusterId home_prefix = 0;    // cluster the node is currently registered under
  bool alive = true;
  bool registered = false;      // proxy-registration flag bit
};

struct Cluster {
  ClusterId id = 0;
  ZoneId zone = 0;
  Position head_position;       // CH anchor
  Rect region;                  // area this CH is responsible for
  std::vector<NodeId> members;  // live members, in join order
  std::size_t min_threshold = 0;
  std::size_t max_threshold = 0;

  std::size_t size() const { return members.size(); }
};

struct Zone {
  ZoneId id = 0;
  std::uint32_t gateway_id = 0;  // Gz
  Rect region;
  std::vector<ClusterId> clusters;
};

enum class CoverageMode {
  disk,      // cell covered when a live node's sensing disk reaches the cell center
  node_cell  // literal variant: only the cell containing the node is marked
};

struct FieldConfig {
  double field_width = 220.0;
  double field_height = 220.0;
  double sensing_radius = 5.0;
  double transmission_range = 5.0;
  double grid_cell_size = 2.0;
  double packet_size = 2048.0;      // bytes
  double initial_energy = 6.0;      // joules
  double tx_power = 1.18e-3;        // watts
  std::uint64_t rng_seed = 1;
  CoverageMode coverage_mode = CoverageMode::disk;

  Rect bounds() const { return {0.0, 0.0, field_width, field_height}; }
};

// The whole simulated world. Node ids equal their index in `nodes`.
struct Field {
  FieldConfig config;
  std::vector<SensorNode> nodes;
  std::vector<Cluster> clusters;  // cluster id == index
  std::vector<Zone> zones;        // zone id == index

  std::size_t live_count() const;
};

// Index of the head closest to p; lowest index wins ties. Throws DomainError on empty input.
std::size_t nearest_cluster_head(Position p, std::span<const Position> heads);

struct Violation {
  enum class Kind {
    config,
    out_of_bounds,
    duplicate_node_id,
    duplicate_membership,
    dangling_member,
    thresholds,
    energy,
    velocity,
    zone_membership,
  };
  Kind kind;
  std::string message;
};

std::string to_string(Violation::Kind kind);

// Checks every invariant of the world types and returns all violations found.
// `max_step` bounds node velocity magnitude; pass a negative value to skip that check.
std::vector<Violation> validate_field(std::span<const SensorNode> nodes, std::span<const Cluster> clusters,
                                      std::span<const Zone> zones, const FieldConfig& config,
                                      double max_step = -1.0);

std::vector<Violation> validate_config(const FieldConfig& config);

// True when `value` is an integer multiple of `step` within floating tolerance.
bool divides_evenly(double value, double step);

}  // namespace holesim
