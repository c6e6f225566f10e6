#pragma once

#include <string>
#include <vector>

#include "holesim/engine.hpp"

namespace holesim {

struct ExperimentPreset {
  std::string name;
  std::string description;
  Scenario base;
  SweepAxis axis = SweepAxis::holes;
  std::vector<double> values;
  std::vector<Protocol> protocols{Protocol::hybrid, Protocol::ssoa};
};

// fig8 .. fig13, in order.
std::vector<std::string> experiment_names();

// Throws ConfigError for an unknown name.
ExperimentPreset experiment_preset(const std::string& name);

std::vector<SweepRow> run_experiment(const ExperimentPreset& preset);

}  // namespace holesim
