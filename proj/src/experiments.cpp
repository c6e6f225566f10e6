#include "holesim/experiments.hpp"

#include "holesim/error.hpp"

namespace holesim {

namespace {

std::vector<double> range(double first, double last, double step) {
  std::vector<double> out;
  for (double v = first; v <= last + 1e-9; v += step) out.push_back(v);
  return out;
}

// Holes swept at the default layout: 674 nodes per zone, 5 clusters per zone, thresholds 124/135, 6 J.
ExperimentPreset holes_at_defaults(std::string name, std::string description) {
  ExperimentPreset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.axis = SweepAxis::holes;
  p.values = range(10, 100, 10);
  return p;
}

// Density swept as nodes per cluster, 20 holes, thresholds 120/150.
ExperimentPreset density_sweep(std::string name, std::string description, std::vector<double> values) {
  ExperimentPreset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.axis = SweepAxis::density;
  p.base.holes_to_inject = 20;
  p.base.layout.phi_min = 120;
  p.base.layout.phi_max = 150;
  p.values = std::move(values);
  return p;
}

}  // namespace

std::vector<std::string> experiment_names() { return {"fig8", "fig9", "fig10", "fig11", "fig12", "fig13"}; }

ExperimentPreset experiment_preset(const std::string& name) {
  if (name == "fig8") return holes_at_defaults("fig8", "sensing holes vs recovery time (T_r)");
  if (name == "fig10") return holes_at_defaults("fig10", "sensing holes vs mean distance moved");
  if (name == "fig9")
    return density_sweep("fig9", "nodes per cluster vs recovery time for 20 holes", range(124, 144, 4));
  if (name == "fig11")
    return density_sweep("fig11", "nodes per cluster vs final coverage", range(80, 150, 10));
  if (name == "fig12")
    return density_sweep("fig12", "nodes per cluster vs node computational cost", range(80, 150, 10));
  if (name == "fig13") {
    ExperimentPreset p;
    p.name = "fig13";
    p.description = "sensing holes vs mean node energy spent, 30 J initial energy";
    p.axis = SweepAxis::holes;
    p.values = range(10, 100, 10);
    p.base.field.initial_energy = 30.0;
    p.base.layout.phi_min = 120;
    p.base.layout.phi_max = 150;
    p.base.layout.nodes_per_zone = 150 * p.base.layout.clusters_per_zone;
    return p;
  }
  throw ConfigError("unknown experiment '" + name + "' (expected fig8..fig13)");
}

std::vector<SweepRow> run_experiment(const ExperimentPreset& preset) {
  return sweep(preset.base, preset.axis, preset.values, preset.protocols);
}

}  // namespace holesim
