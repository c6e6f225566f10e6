#include "holesim/ssoa.hpp"

#include <algorithm>
#include <cmath>

#include "holesim/error.hpp"

namespace holesim {

namespace {

double neighbor_table_bytes(const Field& field, const SensorNode& node, double entry_bytes) {
  std::size_t neighbors = 0;
  const double range = field.config.transmission_range;
  for (const auto& other : field.nodes)
    if (other.alive && other.id != node.id && distance(other.position, node.position) <= range) ++neighbors;
  return static_cast<double>(neighbors) * entry_bytes;
}

// Prices one node-side evaluation (hole detection, target computation, one force round) and
// charges it to the node. Returns true if the charge killed the node.
bool charge_processing(Field& field, SensorNode& node, const SsoaParams& p, EnergyLedger& ledger,
                       SsoaResult& out) {
  const double data = neighbor_table_bytes(field, node, p.neighbor_entry_bytes);
  const double cost = computational_cost(p.cost, data, p.processing_rate, p.bandwidth, p.overhead_per_evaluation);
  const double joules = cost * p.cost_to_joule;
  ledger.add_node_cost(node.id, cost);
  const double before = node.energy;
  const bool died = ledger.charge(node, joules, EnergyCategory::processing);
  out.node_cost += cost;
  out.node_processing_charges += before - node.energy;
  return died;
}

CoverageCounter counter_for(const Field& field, std::span<const std::uint8_t> mask) {
  const CoverageMap shape = initialize_grid(field.config);
  CoverageCounter counter(shape, field.config.sensing_radius, mask);
  for (const auto& n : field.nodes)
    if (n.alive) counter.add(n.position);
  return counter;
}

std::size_t steps_for(double distance, double step_length) {
  return static_cast<std::size_t>(std::ceil(distance / step_length - 1e-12));
}

}  // namespace

SsoaResult ssoa_recover(Field& field, ClusterId cluster_id, const SsoaParams& p, EnergyLedger& ledger,
                        std::size_t step_budget, std::span<const std::uint8_t> monitored) {
  if (cluster_id >= field.clusters.size()) throw DomainError("ssoa_recover: unknown cluster");
  if (!(p.step_length > 0.0)) throw DomainError("ssoa_recover: step length must be positive");
  const Cluster& cluster = field.clusters[cluster_id];
  const CoverageMap shape = initialize_grid(field.config);
  const std::vector<std::uint8_t> mask = monitored.empty()
                                             ? region_mask(shape, cluster.region)
                                             : std::vector<std::uint8_t>(monitored.begin(), monitored.end());

  SsoaResult out;
  out.recovery.distance_by_node.assign(field.nodes.size(), 0.0);
  CoverageCounter counter = counter_for(field, mask);
  out.recovery.holes_per_iteration.push_back(counter.holes());
  if (counter.holes() == 0 || step_budget == 0) {
    out.recovery.recovered = counter.holes() == 0;
    out.recovery.residual_holes = counter.holes();
    return out;
  }

  auto process = [&](SensorNode& n) {
    if (n.alive && charge_processing(field, n, p, ledger, out)) counter.remove(n.position);
  };

  // Phase 1: every live member runs hole detection; the nodes bordering each hole compute a
  // target and move once, at most one tier (one sensing radius) toward the hole's centroid.
  out.tiers_used = SsoaTier::single_tier;
  for (NodeId id : cluster.members) process(field.nodes[id]);

  const double tier = p.single_tier_length > 0.0 ? p.single_tier_length : field.config.sensing_radius;
  const HoleSet holes = find_coverage_holes(counter.snapshot(), std::span<const std::uint8_t>(mask));
  std::vector<std::pair<NodeId, Position>> moves;
  for (const auto& comp : holes.components) {
    for (NodeId id : bordering_nodes(field, cluster, counter.snapshot(), comp)) {
      if (std::any_of(moves.begin(), moves.end(), [&](const auto& m) { return m.first == id; })) continue;
      moves.emplace_back(id, comp.centroid);
    }
  }

  double longest = 0.0;
  for (const auto& [id, target] : moves) {
    SensorNode& n = field.nodes[id];
    process(n);
    if (!n.alive) continue;
    // The move is shortened while it would uncover more than it covers.
    const double full = std::min(tier, distance(n.position, target));
    for (double len = full; len >= std::min(p.step_length, full) && len > 0.0; len /= 2.0) {
      const Position next =
          apply_velocity_step(n.position, step_toward(n.position, target, len), 1.0, field.config.bounds());
      if (counter.hole_delta(n.position, next) > 0) continue;
      const double moved = distance(n.position, next);
      counter.remove(n.position);
      counter.add(next);
      n.position = next;
      out.recovery.distance_by_node[id] += moved;
      out.recovery.total_distance += moved;
      longest = std::max(longest, moved);
      ++out.phase1_movers;
      if (ledger.charge(n, movement_energy(moved, p.joules_per_meter), EnergyCategory::movement))
        counter.remove(n.position);
      break;
    }
  }
  out.steps_used = std::max<std::size_t>(1, steps_for(longest, p.step_length));
  out.recovery.iterations_used = 1;
  out.recovery.holes_per_iteration.push_back(counter.holes());

  // Phase 2: global force-based redeployment of the whole cluster, computed on every node.
  if (counter.holes() > 0 && out.steps_used < step_budget) {
    out.tiers_used = SsoaTier::global_redeploy;
    ForceParams fp = p.forces;
    fp.max_step = std::min(fp.max_step, p.step_length);
    fp.seed = field.config.rng_seed ^ 0xe7fab0ULL;

    while (counter.holes() > 0 && out.redeploy_rounds < p.max_redeploy_rounds && out.steps_used < step_budget) {
      for (NodeId id : cluster.members) process(field.nodes[id]);
      std::vector<NodeId> live;
      for (NodeId id : cluster.members)
        if (field.nodes[id].alive) live.push_back(id);
      if (live.empty()) break;
      std::vector<Position> pts;
      for (NodeId id : live) pts.push_back(field.nodes[id].position);
      std::vector<double> moved(pts.size(), 0.0);
      const ForceRound round = force_round(pts, cluster.region, fp, moved);
      ++out.redeploy_rounds;
      ++out.steps_used;
      ++out.recovery.iterations_used;
      for (std::size_t k = 0; k < live.size(); ++k) {
        SensorNode& n = field.nodes[live[k]];
        counter.remove(n.position);
        n.position = pts[k];
        counter.add(n.position);
        out.recovery.distance_by_node[n.id] += moved[k];
        out.recovery.total_distance += moved[k];
        if (ledger.charge(n, movement_energy(moved[k], p.joules_per_meter), EnergyCategory::movement))
          counter.remove(n.position);
      }
      out.recovery.holes_per_iteration.push_back(counter.holes());
      if (round.max_residual < fp.epsilon) break;
    }
  }

  out.recovery.residual_holes = counter.holes();
  out.recovery.recovered = counter.holes() == 0;
  return out;
}

ComparisonRow compare_runs(const MatchedRun& hybrid, const MatchedRun& ssoa) {
  if (hybrid.protocol != Protocol::hybrid || ssoa.protocol != Protocol::ssoa)
    throw DomainError("compare_runs: expected one hybrid run and one ssoa run");
  if (hybrid.fingerprint != ssoa.fingerprint)
    throw DomainError("compare_runs: runs do not share a scenario fingerprint");
  auto ratio = [](double h, double s) -> std::optional<double> {
    if (s == 0.0) return std::nullopt;
    return h / s;
  };
  ComparisonRow row;
  row.hybrid = hybrid.metrics;
  row.ssoa = ssoa.metrics;
  row.recovery_time_ratio = ratio(static_cast<double>(hybrid.metrics.recovery_time_steps),
                                  static_cast<double>(ssoa.metrics.recovery_time_steps));
  row.coverage_ratio = ratio(hybrid.metrics.final_coverage_fraction, ssoa.metrics.final_coverage_fraction);
  row.energy_ratio =
      ratio(hybrid.metrics.mean_node_energy_spent_fraction, ssoa.metrics.mean_node_energy_spent_fraction);
  row.cost_ratio = ratio(hybrid.metrics.total_computational_cost, ssoa.metrics.total_computational_cost);
  return row;
}

}  // namespace holesim
