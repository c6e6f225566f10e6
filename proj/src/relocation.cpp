#include "holesim/relocation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <tuple>

#include "holesim/error.hpp"
#include "holesim/rng.hpp"

namespace holesim {

ForceVector pairwise_virtual_force(Position a, Position b, double d_threshold, double k_att, double k_rep,
                                   std::uint64_t tie_seed) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double d = std::hypot(dx, dy);
  if (d == 0.0) {
    const double angle = static_cast<double>(splitmix64(tie_seed) >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
    const double mag = k_rep * d_threshold;
    return {mag * std::cos(angle), mag * std::sin(angle)};
  }
  const double ux = dx / d;
  const double uy = dy / d;
  if (d < d_threshold) {
    const double mag = k_rep * (d_threshold - d);
    return {-mag * ux, -mag * uy};
  }
  if (d > d_threshold) {
    const double mag = k_att * (d - d_threshold);
    return {mag * ux, mag * uy};
  }
  return {};
}

ForceVector boundary_force(Position p, const Rect& bounds, double margin, double k_b) {
  ForceVector f;
  const double left = p.x - bounds.x0;
  const double right = bounds.x1 - p.x;
  const double bottom = p.y - bounds.y0;
  const double top = bounds.y1 - p.y;
  if (left < margin) f.fx += k_b * (margin - left);
  if (right < margin) f.fx -= k_b * (margin - right);
  if (bottom < margin) f.fy += k_b * (margin - bottom);
  if (top < margin) f.fy -= k_b * (margin - top);
  return f;
}

Position apply_velocity_step(Position p, Velocity v, double dt, const Rect& bounds) {
  return bounds.clamp({p.x + v.vx * dt, p.y + v.vy * dt});
}

Velocity step_toward(Position p, Position target, double dx) {
  if (!(dx > 0.0)) throw DomainError("step_toward: step length must be positive");
  const double ddx = target.x - p.x;
  const double ddy = target.y - p.y;
  const double d = std::hypot(ddx, ddy);
  if (d == 0.0) return {};
  if (d <= dx) return {ddx, ddy};
  return {ddx / d * dx, ddy / d * dx};
}

ForceRound force_round(std::span<Position> points, const Rect& region, const ForceParams& params,
                       std::span<double> displacement) {
  const std::size_t n = points.size();
  std::vector<ForceVector> forces(n);
  const double range2 = params.neighbor_range * params.neighbor_range;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points[j].x - points[i].x;
      const double dy = points[j].y - points[i].y;
      if (dx * dx + dy * dy > range2) continue;
      const std::uint64_t tie = splitmix64(params.seed ^ (static_cast<std::uint64_t>(i) << 32 | j));
      const ForceVector f =
          pairwise_virtual_force(points[i], points[j], params.d_threshold, params.k_att, params.k_rep, tie);
      forces[i] += f;
      forces[j] += ForceVector{-f.fx, -f.fy};
    }
    forces[i] += boundary_force(points[i], region, params.margin, params.k_b);
  }

  ForceRound round;
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = forces[i].magnitude();
    round.max_residual = std::max(round.max_residual, mag);
    double sx = forces[i].fx * params.gain;
    double sy = forces[i].fy * params.gain;
    const double len = std::hypot(sx, sy);
    if (len > params.max_step) {
      sx *= params.max_step / len;
      sy *= params.max_step / len;
    }
    const Position next = region.clamp({points[i].x + sx, points[i].y + sy});
    const double moved = distance(points[i], next);
    if (!displacement.empty()) displacement[i] = moved;
    round.max_displacement = std::max(round.max_displacement, moved);
    points[i] = next;
  }
  return round;
}

std::vector<Position> initial_deploy(std::size_t count, const Rect& region, std::uint64_t seed,
                                     const ForceParams& params) {
  if (count < 1) throw DomainError("initial_deploy: count must be at least 1");
  Rng rng(seed);
  std::vector<Position> pts(count);
  for (auto& p : pts) {
    p.x = rng.uniform(region.x0, region.x1);
    p.y = rng.uniform(region.y0, region.y1);
  }
  ForceParams local = params;
  local.seed = splitmix64(seed ^ 0x5eedULL);
  for (std::size_t r = 0; r < local.max_rounds; ++r) {
    const ForceRound round = force_round(pts, region, local);
    if (round.max_residual < local.epsilon) break;
  }
  return pts;
}

std::size_t RecoveryResult::movers() const {
  return static_cast<std::size_t>(
      std::count_if(distance_by_node.begin(), distance_by_node.end(), [](double d) { return d > 0.0; }));
}

double RecoveryResult::mean_distance_per_mover() const {
  const std::size_t m = movers();
  return m == 0 ? 0.0 : total_distance / static_cast<double>(m);
}

// ---------------------------------------------------------------------------

namespace {

CoverageCounter build_counter(const Field& field, const CoverageMap& shape, std::span<const std::uint8_t> mask) {
  CoverageCounter counter(shape, field.config.sensing_radius, mask);
  for (const auto& n : field.nodes)
    if (n.alive) counter.add(n.position);
  return counter;
}

const Cluster& cluster_at(const Field& field, ClusterId id) {
  if (id >= field.clusters.size()) throw DomainError("unknown cluster " + std::to_string(id));
  return field.clusters[id];
}

// Marks, per cell, which hole components it borders (covered cells 4-adjacent to a hole).
std::vector<std::vector<std::uint32_t>> perimeter_owners(const CoverageMap& map, const HoleSet& holes) {
  std::vector<std::vector<std::uint32_t>> owners(map.cell_count());
  constexpr int di[4] = {1, -1, 0, 0};
  constexpr int dj[4] = {0, 0, 1, -1};
  for (std::uint32_t c = 0; c < holes.components.size(); ++c) {
    for (const auto& cell : holes.components[c].cells) {
      for (int k = 0; k < 4; ++k) {
        const int ni = cell.i + di[k];
        const int nj = cell.j + dj[k];
        if (!map.in_grid(ni, nj) || !map.covered(ni, nj)) continue;
        auto& o = owners[static_cast<std::size_t>(nj) * map.width_cells() + ni];
        if (o.empty() || o.back() != c) o.push_back(c);
      }
    }
  }
  return owners;
}

template <typename F>
void for_disk_cells(const CoverageMap& map, Position p, double r, F&& f) {
  const double cs = map.cell_size();
  const int i0 = std::max(0, static_cast<int>(std::floor((p.x - r) / cs)));
  const int i1 = std::min(map.width_cells() - 1, static_cast<int>(std::floor((p.x + r) / cs)));
  const int j0 = std::max(0, static_cast<int>(std::floor((p.y - r) / cs)));
  const int j1 = std::min(map.height_cells() - 1, static_cast<int>(std::floor((p.y + r) / cs)));
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) {
      const Position c = map.cell_center(i, j);
      const double dx = c.x - p.x;
      const double dy = c.y - p.y;
      if (dx * dx + dy * dy <= r * r) f(i, j);
    }
}

// For each live member, the index of the nearest bordered component, or -1.
std::vector<std::pair<NodeId, std::int64_t>> assign_movers(const Field& field, const Cluster& cluster,
                                                           const CoverageMap& map, const HoleSet& holes) {
  const auto owners = perimeter_owners(map, holes);
  std::vector<std::pair<NodeId, std::int64_t>> out;
  for (NodeId id : cluster.members) {
    const SensorNode& n = field.nodes[id];
    if (!n.alive) continue;
    std::int64_t best = -1;
    double best_d = 0.0;
    for_disk_cells(map, n.position, field.config.sensing_radius, [&](int i, int j) {
      for (std::uint32_t c : owners[static_cast<std::size_t>(j) * map.width_cells() + i]) {
        const double d = distance(n.position, holes.components[c].centroid);
        if (best < 0 || d < best_d || (d == best_d && c < best)) {
          best = c;
          best_d = d;
        }
      }
    });
    if (best >= 0) out.emplace_back(id, best);
  }
  return out;
}

}  // namespace

std::vector<NodeId> bordering_nodes(const Field& field, const Cluster& cluster, const CoverageMap& map,
                                    const HoleComponent& component) {
  HoleSet single;
  single.components.push_back(component);
  single.cells = component.cells;
  std::vector<NodeId> out;
  for (const auto& [id, comp] : assign_movers(field, cluster, map, single)) out.push_back(id);
  return out;
}

HybridRecovery::HybridRecovery(Field& field, ClusterId cluster, HybridParams params, EnergyLedger* ledger,
                               TraceSink trace, std::span<const std::uint8_t> monitored)
    : field_(field), cluster_(cluster), params_(params), ledger_(ledger), trace_(std::move(trace)),
      shape_(initialize_grid(field.config)),
      monitored_(monitored.empty() ? region_mask(shape_, cluster_at(field, cluster).region)
                                   : std::vector<std::uint8_t>(monitored.begin(), monitored.end())),
      counter_(build_counter(field, shape_, monitored_)) {
  if (params_.max_iterations < 1) throw DomainError("recover_holes_hybrid: max_iterations must be at least 1");
  if (!(params_.step_length > 0.0)) throw DomainError("recover_holes_hybrid: step length must be positive");
  result_.distance_by_node.assign(field.nodes.size(), 0.0);
  result_.holes_per_iteration.push_back(counter_.holes());
  result_.residual_holes = counter_.holes();
  result_.recovered = counter_.holes() == 0;
  best_holes_ = counter_.holes();
}

void HybridRecovery::refresh() {
  counter_ = build_counter(field_, shape_, monitored_);
  result_.residual_holes = counter_.holes();
  result_.recovered = counter_.holes() == 0;
}

HoleSet HybridRecovery::hole_set() const {
  return find_coverage_holes(counter_.snapshot(), std::span<const std::uint8_t>(monitored_));
}

double HybridRecovery::move_node(NodeId id, Position target) {
  SensorNode& n = field_.nodes.at(id);
  if (!n.alive) return 0.0;
  const Velocity v = step_toward(n.position, target, params_.step_length);
  const Position next = apply_velocity_step(n.position, v, 1.0, field_.config.bounds());
  const double moved = distance(n.position, next);
  if (moved == 0.0) return 0.0;
  if (counter_.hole_delta(n.position, next) > 0) return 0.0;

  counter_.remove(n.position);
  counter_.add(next);
  n.position = next;
  n.velocity = v;
  if (result_.distance_by_node.size() < field_.nodes.size()) result_.distance_by_node.resize(field_.nodes.size());
  result_.distance_by_node[id] += moved;
  result_.total_distance += moved;
  if (ledger_ && ledger_->charge(n, movement_energy(moved, params_.joules_per_meter), EnergyCategory::movement))
    counter_.remove(n.position);
  return moved;
}

std::size_t HybridRecovery::iterate(std::span<const NodeId> skip) {
  if (counter_.holes() == 0) {
    result_.recovered = true;
    return 0;
  }
  if (counter_.holes() < best_holes_) {
    best_holes_ = counter_.holes();
    idle_ = 0;
  }
  if (idle_ >= params_.patience) {
    ++result_.iterations_used;
    result_.holes_per_iteration.push_back(counter_.holes());
    return 0;
  }
  const CoverageMap map = counter_.snapshot();
  const Cluster& cluster = cluster_at(field_, cluster_);
  const HoleSet holes = find_coverage_holes(map, std::span<const std::uint8_t>(monitored_));
  const auto movers = assign_movers(field_, cluster, map, holes);

  ++result_.iterations_used;
  std::size_t moved = 0;
  auto step = [&](NodeId id, Position target) {
    if (move_node(id, target) == 0.0) return;
    ++moved;
    if (trace_) {
      const auto& n = field_.nodes[id];
      trace_({result_.iterations_used, id, n.position.x, n.position.y, counter_.holes()});
    }
  };
  std::vector<NodeId> acted;
  auto skipped = [&](NodeId id) {
    return std::find(skip.begin(), skip.end(), id) != skip.end() ||
           std::find(acted.begin(), acted.end(), id) != acted.end();
  };
  // After an iteration without progress the centroid is a dead end for at least one node, so
  // bordering nodes head for the closest cell of their component instead.
  auto nearest_cell = [&](Position p, const HoleComponent& comp) {
    Position best = map.cell_center(comp.cells.front().i, comp.cells.front().j);
    double best_d = distance(p, best);
    for (const auto& cell : comp.cells) {
      const Position c = map.cell_center(cell.i, cell.j);
      const double d = distance(p, c);
      if (d < best_d) {
        best = c;
        best_d = d;
      }
    }
    return best;
  };
  for (const auto& [id, comp] : movers) {
    if (skipped(id)) continue;
    const HoleComponent& hc = holes.components[static_cast<std::size_t>(comp)];
    step(id, stalled_ ? nearest_cell(field_.nodes[id].position, hc) : hc.centroid);
    acted.push_back(id);
  }

  // When the bordering nodes made no progress, each component pulls in the nearest member whose
  // next step toward it is allowed by the guard.
  if (stalled_ && params_.stall_helpers) {
    const Rect bounds = field_.config.bounds();
    for (const auto& comp : holes.components) {
      std::vector<std::tuple<double, NodeId, Position>> candidates;
      for (NodeId id : cluster.members) {
        const SensorNode& n = field_.nodes[id];
        if (!n.alive || skipped(id)) continue;
        std::optional<Position> nearest;
        double best_d = 0.0;
        for (const auto& cell : comp.cells) {
          const Position c = map.cell_center(cell.i, cell.j);
          const double d = distance(n.position, c);
          if (!nearest || d < best_d) {
            nearest = c;
            best_d = d;
          }
        }
        candidates.emplace_back(best_d, id, *nearest);
      }
      std::sort(candidates.begin(), candidates.end(),
                [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) <
                                                          std::tie(std::get<0>(b), std::get<1>(b)); });
      for (const auto& [d, id, cell] : candidates) {
        const Position from = field_.nodes[id].position;
        const Position to = apply_velocity_step(from, step_toward(from, cell, params_.step_length), 1.0, bounds);
        if (to == from || counter_.hole_delta(from, to) > 0) continue;
        step(id, cell);
        acted.push_back(id);
        break;
      }
    }
  }
  stalled_ = counter_.holes() >= result_.holes_per_iteration.back();
  if (counter_.holes() < best_holes_) {
    best_holes_ = counter_.holes();
    idle_ = 0;
  } else {
    ++idle_;
  }
  result_.holes_per_iteration.push_back(counter_.holes());
  result_.residual_holes = counter_.holes();
  result_.recovered = counter_.holes() == 0;
  return moved;
}

RecoveryResult recover_holes_hybrid(Field& field, ClusterId cluster, const HybridParams& params,
                                    EnergyLedger* ledger, TraceSink trace, std::span<const std::uint8_t> monitored) {
  HybridRecovery rec(field, cluster, params, ledger, std::move(trace), monitored);
  while (rec.holes() > 0 && rec.result().iterations_used < params.max_iterations) rec.iterate();
  return rec.result();
}

}  // namespace holesim
