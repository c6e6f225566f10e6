#include "holesim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "holesim/error.hpp"

namespace holesim {

double computational_cost(const CostCoefficients& c, double data_bytes, double processing_rate, double bandwidth,
                          double overhead) {
  if (!(processing_rate > 0.0)) throw DomainError("computational_cost: processing rate must be positive");
  if (!(bandwidth > 0.0)) throw DomainError("computational_cost: bandwidth must be positive");
  return c.k1 * data_bytes + c.k2 * data_bytes / processing_rate + c.k3 * data_bytes / bandwidth + c.k4 * overhead;
}

double transmission_energy(double bytes, double tx_power, double bitrate) {
  if (!(bitrate > 0.0)) throw DomainError("transmission_energy: bitrate must be positive");
  return tx_power * (8.0 * bytes / bitrate);
}

double movement_energy(double distance, double joules_per_meter) {
  if (distance < 0.0) throw DomainError("movement_energy: negative distance");
  return joules_per_meter * distance;
}

double charge(SensorNode& node, double joules) {
  if (joules < 0.0) throw DomainError("charge: negative amount");
  const double taken = std::min(joules, node.energy);
  node.energy -= taken;
  if (node.energy <= 0.0) {
    node.energy = 0.0;
    node.alive = false;
  }
  return taken;
}

EnergyLedger::EnergyLedger(std::span<const SensorNode> nodes)
    : initial_(nodes.size(), 0.0), spent_(nodes.size()), node_cost_(nodes.size(), 0.0) {
  for (const auto& n : nodes) {
    if (n.id >= nodes.size()) throw DomainError("EnergyLedger: node ids must be dense indices");
    initial_[n.id] = n.energy;
    spent_[n.id].fill(0.0);
  }
}

bool EnergyLedger::charge(SensorNode& node, double joules, EnergyCategory category) {
  if (node.id >= spent_.size()) throw DomainError("EnergyLedger::charge: unknown node");
  const bool was_alive = node.alive;
  const double taken = holesim::charge(node, joules);
  spent_[node.id][static_cast<std::size_t>(category)] += taken;
  return was_alive && !node.alive;
}

void EnergyLedger::add_node_cost(NodeId node, double cost) { node_cost_.at(node) += cost; }

double EnergyLedger::spent(NodeId node, EnergyCategory category) const {
  return spent_.at(node)[static_cast<std::size_t>(category)];
}

double EnergyLedger::spent(NodeId node) const {
  const auto& s = spent_.at(node);
  return s[0] + s[1] + s[2] + s[3];
}

double EnergyLedger::category_total(EnergyCategory category) const {
  double t = 0.0;
  for (const auto& s : spent_) t += s[static_cast<std::size_t>(category)];
  return t;
}

double EnergyLedger::node_cost_total() const {
  double t = 0.0;
  for (double c : node_cost_) t += c;
  return t;
}

std::string EnergyLedger::to_csv(std::span<const SensorNode> nodes) const {
  std::string out = "node_id,sensing_J,tx_J,move_J,proc_J,remaining_J\n";
  char line[160];
  for (const auto& n : nodes) {
    const auto& s = spent_.at(n.id);
    std::snprintf(line, sizeof line, "%u,%.9g,%.9g,%.9g,%.9g,%.9g\n", n.id, s[0], s[1], s[2], s[3], n.energy);
    out += line;
  }
  return out;
}

}  // namespace holesim
