#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "holesim/cluster_manager.hpp"
#include "holesim/energy.hpp"
#include "holesim/metrics.hpp"
#include "holesim/protocol.hpp"
#include "holesim/relocation.hpp"
#include "holesim/ssoa.hpp"
#include "holesim/world.hpp"

namespace holesim {

enum class HolePlacement { uniform_in_test_cluster, concentrated };

std::string to_string(HolePlacement p);
HolePlacement placement_from_string(const std::string& name);

// Zones tile the field as a zones_x by zones_y grid; each zone is cut into equal bands of
// clusters along its longer side, with the CH at the band center.
struct LayoutParams {
  std::size_t zones_x = 2;
  std::size_t zones_y = 1;
  std::size_t clusters_per_zone = 5;
  std::size_t nodes_per_zone = 674;
  std::size_t phi_min = 124;
  std::size_t phi_max = 135;
  std::size_t test_zone = 0;
  std::size_t test_cluster = 2;  // index within the test zone
  bool nearest_to_border = true;  // migrate the donor member closest to the receiving cluster
};

struct EnergyParams {
  double bitrate = 250000.0;          // bits/s
  double joules_per_meter = 0.01;
  double sensing_per_step = 1e-4;
  CostCoefficients cost;
  double processing_rate = 1.0e6;     // ops/s
  double bandwidth = 31250.0;         // bytes/s
  double cost_to_joule = 1e-5;
};

struct Scenario {
  FieldConfig field;
  LayoutParams layout;
  Protocol protocol = Protocol::hybrid;
  std::size_t holes_to_inject = 0;
  HolePlacement placement = HolePlacement::uniform_in_test_cluster;
  std::size_t max_steps = 2000;
  double step_ms = 1.0;  // registration latency is converted to whole steps with this
  HybridParams hybrid;
  ForceParams forces;
  ProtocolParams protocol_params;
  EnergyParams energy;
  SsoaParams ssoa;  // cost and movement constants come from `energy`, entry size from the packet size
  bool trace = false;

  std::uint64_t seed() const { return field.rng_seed; }
};

// Every violation of the scenario's invariants, including the field configuration's.
std::vector<Violation> validate_scenario(const Scenario& scenario);

// Deploys every cluster with the force layout inside its band. Deterministic per seed.
Field build_field(const Scenario& scenario);

ClusterId test_cluster_id(const Scenario& scenario);

// Kills `count` live members of the cluster and drops them from its membership. Returns the ids killed.
std::vector<NodeId> inject_holes(Field& field, ClusterId cluster, std::size_t count, HolePlacement placement,
                                 std::uint64_t seed);

struct RunReport {
  ScenarioMetrics metrics;
  std::uint64_t fingerprint = 0;
  std::vector<NodeId> killed;
  std::vector<std::size_t> holes_per_step;  // entry 0 right after injection
  std::string registration_log;             // CSV
  std::string migration_log;                // CSV: step,sensor_id,from,to
  std::string trace_log;                    // CSV, only when scenario.trace
  std::string ledger_csv;
};

RunReport run_scenario(const Scenario& scenario);

enum class SweepAxis { holes, density };
std::string to_string(SweepAxis axis);

struct SweepRow {
  Protocol protocol;
  double axis_value;
  std::uint64_t seed;
  RunReport report;
};

// One run per (value, protocol). Row k of `values` uses seed base + k for every protocol, so runs
// at the same value are matched. The density axis sets nodes per cluster.
std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis, const std::vector<double>& values,
                            const std::vector<Protocol>& protocols);

// protocol,axis_value,seed,T_r,coverage,mean_dist_m,energy_frac,comp_cost,reg_intra,reg_inter
std::string results_csv_header();
std::string results_csv_row(Protocol protocol, double axis_value, std::uint64_t seed, const ScenarioMetrics& m);
std::string results_csv(const std::vector<SweepRow>& rows);

std::string summary_text(const Scenario& scenario, const RunReport& report);

}  // namespace holesim
