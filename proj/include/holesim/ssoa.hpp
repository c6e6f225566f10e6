#pragma once

#include <cstddef>
#include <optional>

#include "holesim/energy.hpp"
#include "holesim/metrics.hpp"
#include "holesim/relocation.hpp"
#include "holesim/world.hpp"

namespace holesim {

struct SsoaParams {
  double single_tier_length = 0.0;  // <= 0 means one sensing radius
  double step_length = 0.5;         // physical speed, meters per step
  std::size_t max_redeploy_rounds = 300;
  ForceParams forces;               // global redeployment layout
  double joules_per_meter = 0.01;
  // Node-side processing is priced with computational_cost over the node's neighbor table.
  CostCoefficients cost;
  double neighbor_entry_bytes = 2048.0;  // one packet of state per neighbor
  double processing_rate = 1.0e6;   // ops/s
  double bandwidth = 31250.0;       // bytes/s (250 kbit/s)
  double overhead_per_evaluation = 1.0;
  double cost_to_joule = 1e-5;
};

enum class SsoaTier { none, single_tier, global_redeploy };

struct SsoaResult {
  RecoveryResult recovery;
  SsoaTier tiers_used = SsoaTier::none;
  double node_processing_charges = 0.0;  // joules
  double node_cost = 0.0;                // computational cost units charged to nodes
  std::size_t steps_used = 0;
  std::size_t phase1_movers = 0;
  std::size_t redeploy_rounds = 0;
};

// Single-tier repair by the nodes around each hole, then force-based redeployment of the whole
// cluster if holes remain. All computation is charged to the nodes. `monitored`, when given, marks
// the grid cells counted as holes (defaults to the cluster's region). `step_budget` caps the steps
// the run may consume.
SsoaResult ssoa_recover(Field& field, ClusterId cluster, const SsoaParams& params, EnergyLedger& ledger,
                        std::size_t step_budget = static_cast<std::size_t>(-1),
                        std::span<const std::uint8_t> monitored = {});

struct ComparisonRow {
  ScenarioMetrics hybrid;
  ScenarioMetrics ssoa;
  // hybrid / ssoa; empty when the ssoa value is zero.
  std::optional<double> recovery_time_ratio;
  std::optional<double> coverage_ratio;
  std::optional<double> energy_ratio;
  std::optional<double> cost_ratio;
};

// Throws DomainError when the runs do not share a scenario fingerprint or are not one of each protocol.
ComparisonRow compare_runs(const MatchedRun& hybrid, const MatchedRun& ssoa);

}  // namespace holesim
