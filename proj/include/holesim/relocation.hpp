#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "holesim/coverage.hpp"
#include "holesim/energy.hpp"
#include "holesim/world.hpp"

namespace holesim {

struct ForceVector {
  double fx = 0.0;
  double fy = 0.0;

  ForceVector& operator+=(ForceVector o) {
    fx += o.fx;
    fy += o.fy;
    return *this;
  }
  double magnitude() const { return std::hypot(fx, fy); }
};

// Constants for the attraction/repulsion + boundary force layout.
struct ForceParams {
  double d_threshold = 8.660254037844386;  // sqrt(3) * 5 m sensing radius
  double k_att = 1.0;
  double k_rep = 1.0;
  double k_b = 2.0;
  double margin = 2.5;           // boundary force acts within this distance of an edge
  double neighbor_range = 10.0;  // pairs farther apart do not interact (two sensing radii)
  double gain = 0.1;             // meters of displacement per unit force
  double max_step = 0.5;         // displacement cap per round
  double epsilon = 1e-3;         // convergence: largest residual force below this
  std::size_t max_rounds = 400;
  std::uint64_t seed = 0;        // direction source for coincident pairs
};

// Force on `a` from `b`: repulsive below d_threshold, attractive above, zero at it.
// Coincident points get a fixed repulsion of k_rep * d_threshold in a direction derived from tie_seed.
ForceVector pairwise_virtual_force(Position a, Position b, double d_threshold, double k_att, double k_rep,
                                   std::uint64_t tie_seed = 0);

// Inward force from every edge of `bounds` closer than `margin`.
ForceVector boundary_force(Position p, const Rect& bounds, double margin, double k_b);

// p + v*dt, clamped into bounds.
Position apply_velocity_step(Position p, Velocity v, double dt, const Rect& bounds);

// Velocity that moves p toward target by min(dx, remaining distance) in one unit step.
Velocity step_toward(Position p, Position target, double dx);

struct ForceRound {
  double max_displacement = 0.0;
  double max_residual = 0.0;  // largest net force magnitude before capping
};

// One synchronous force update over all points, confined to `region`.
// `displacement`, when non-empty, receives the distance each point moved.
ForceRound force_round(std::span<Position> points, const Rect& region, const ForceParams& params,
                       std::span<double> displacement = {});

// Seeds `count` uniform random points in `region` and relaxes them under the force law until the
// residual force drops below epsilon or max_rounds is reached.
std::vector<Position> initial_deploy(std::size_t count, const Rect& region, std::uint64_t seed,
                                     const ForceParams& params);

struct HybridParams {
  double step_length = 0.5;             // displacement per iteration (delta x)
  std::size_t max_iterations = 500;
  double joules_per_meter = 0.01;
  bool stall_helpers = true;  // let non-bordering members join a stalled repair
  std::size_t patience = 100;  // iterations without progress before nodes stop moving
};

struct RecoveryResult {
  std::size_t iterations_used = 0;
  bool recovered = false;
  std::vector<double> distance_by_node;  // indexed by node id
  double total_distance = 0.0;
  std::size_t residual_holes = 0;
  std::vector<std::size_t> holes_per_iteration;  // entry 0 is the count at entry

  std::size_t movers() const;
  double mean_distance_per_mover() const;
};

struct TraceRow {
  std::size_t iteration;
  NodeId node;
  double x;
  double y;
  std::size_t holes_remaining;
};
using TraceSink = std::function<void(const TraceRow&)>;

// Iterative small-step recovery for one cluster. Coverage is counted from every live node in the
// field; holes are the uncovered cells inside the cluster's region; movers are the live members
// whose sensing disk reaches a covered cell 4-adjacent to a hole component. Each mover steps toward
// its nearest bordering component's centroid. After an iteration without progress, movers aim at
// the closest cell of their component instead, and (with stall_helpers) each component also draws
// the nearest member that can step toward it. A step that would leave more region holes than it
// fills is held back, so the hole count never increases. After `patience` iterations without
// progress nodes stay put until the hole count drops for another reason. `monitored` narrows the
// cells that count as holes (row-major mask); by default it is every cell of the cluster's region.
class HybridRecovery {
public:
  HybridRecovery(Field& field, ClusterId cluster, HybridParams params, EnergyLedger* ledger = nullptr,
                 TraceSink trace = {}, std::span<const std::uint8_t> monitored = {});

  std::size_t holes() const { return counter_.holes(); }
  // Runs one iteration and returns the number of nodes that moved. Nodes in `skip` stay put.
  std::size_t iterate(std::span<const NodeId> skip = {});
  // Guarded single step of node `id` toward `target`. Returns the distance moved.
  double move_node(NodeId id, Position target);
  // Rebuilds coverage counts after deaths or external position changes.
  void refresh();
  HoleSet hole_set() const;

  const RecoveryResult& result() const { return result_; }
  RecoveryResult& result() { return result_; }
  const CoverageCounter& counter() const { return counter_; }

private:
  Field& field_;
  ClusterId cluster_;
  HybridParams params_;
  EnergyLedger* ledger_;
  TraceSink trace_;
  CoverageMap shape_;
  std::vector<std::uint8_t> monitored_;
  CoverageCounter counter_;
  RecoveryResult result_;
  bool stalled_ = false;
  std::size_t best_holes_ = 0;
  std::size_t idle_ = 0;
};

RecoveryResult recover_holes_hybrid(Field& field, ClusterId cluster, const HybridParams& params,
                                    EnergyLedger* ledger = nullptr, TraceSink trace = {},
                                    std::span<const std::uint8_t> monitored = {});

// Live members of `cluster` whose sensing disk reaches a covered cell 4-adjacent to `component`.
std::vector<NodeId> bordering_nodes(const Field& field, const Cluster& cluster, const CoverageMap& map,
                                    const HoleComponent& component);

}  // namespace holesim
