#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "holesim/world.hpp"

namespace holesim {

struct CostCoefficients {
  double k1 = 1.0;  // per byte of data
  double k2 = 1.0;  // per byte per processing rate
  double k3 = 1.0;  // per byte per bandwidth unit
  double k4 = 1.0;  // per overhead unit
};

// k1*D + k2*D/R + k3*D/B + k4*O. Throws DomainError unless R > 0 and B > 0.
double computational_cost(const CostCoefficients& coeff, double data_bytes, double processing_rate,
                          double bandwidth, double overhead);

// Joules to send `bytes` at `bitrate` bits/s with `tx_power` watts.
double transmission_energy(double bytes, double tx_power, double bitrate);

// Joules to move `distance` meters. Throws DomainError for a negative distance.
double movement_energy(double distance, double joules_per_meter);

enum class EnergyCategory : std::size_t { sensing = 0, transmission = 1, movement = 2, processing = 3 };
inline constexpr std::size_t kEnergyCategories = 4;

// Deducts up to `joules` from the node. Returns the amount actually deducted; the node dies
// when its energy reaches zero.
double charge(SensorNode& node, double joules);

// Per-node record of where energy went, plus the network-side processing account used by the
// hybrid scheme.
class EnergyLedger {
public:
  EnergyLedger() = default;
  explicit EnergyLedger(std::span<const SensorNode> nodes);

  // Deducts from the node and records the deducted amount. Returns true if the node died.
  bool charge(SensorNode& node, double joules, EnergyCategory category);
  void charge_network(double joules) { network_joules_ += joules; }
  void add_node_cost(NodeId node, double cost);
  void add_network_cost(double cost) { network_cost_ += cost; }

  double spent(NodeId node, EnergyCategory category) const;
  double spent(NodeId node) const;
  double initial(NodeId node) const { return initial_.at(node); }
  double category_total(EnergyCategory category) const;
  double node_cost(NodeId node) const { return node_cost_.at(node); }
  double node_cost_total() const;
  double network_joules() const { return network_joules_; }
  double network_cost() const { return network_cost_; }
  std::size_t size() const { return initial_.size(); }

  // node_id,sensing_J,tx_J,move_J,proc_J,remaining_J
  std::string to_csv(std::span<const SensorNode> nodes) const;

private:
  std::vector<double> initial_;
  std::vector<std::array<double, kEnergyCategories>> spent_;
  std::vector<double> node_cost_;
  double network_joules_ = 0.0;
  double network_cost_ = 0.0;
};

}  // namespace holesim
