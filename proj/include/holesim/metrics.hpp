#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace holesim {

enum class Protocol { hybrid, ssoa };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& name);

// The five per-run measures plus registration counts.
struct ScenarioMetrics {
  std::size_t recovery_time_steps = 0;  // T_r; equals max_steps when not recovered
  bool recovered = false;
  double final_coverage_fraction = 0.0;  // test cluster region
  double initial_coverage_fraction = 0.0;  // before hole injection
  double mean_distance_moved = 0.0;        // meters, over nodes that moved
  double mean_node_energy_spent_fraction = 0.0;  // over the test cluster's final members
  double total_computational_cost = 0.0;   // node-attributed
  double network_computational_cost = 0.0;
  std::size_t registrations_intra = 0;
  std::size_t registrations_inter = 0;
  std::size_t hole_cells_after_injection = 0;
  std::size_t residual_hole_cells = 0;
  std::size_t protocol_bytes = 0;
  std::size_t energy_deaths = 0;
};

// A run plus the fingerprint of everything that must match for two runs to be compared.
struct MatchedRun {
  Protocol protocol = Protocol::hybrid;
  std::uint64_t fingerprint = 0;
  ScenarioMetrics metrics;
};

}  // namespace holesim
