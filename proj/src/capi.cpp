#include "holesim/holesim.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "holesim/config.hpp"
#include "holesim/engine.hpp"
#include "holesim/error.hpp"
#include "holesim/experiments.hpp"

struct hs_config {
  holesim::Scenario scenario;
};

struct hs_result {
  holesim::Scenario scenario;
  holesim::RunReport report;
};

namespace {

thread_local std::string last_error;

hs_status fail(hs_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
hs_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const holesim::ConfigError& e) {
    return fail(HS_ERR_CONFIG, e.what());
  } catch (const holesim::InvariantViolation& e) {
    return fail(HS_ERR_INVARIANT, e.what());
  } catch (const holesim::DomainError& e) {
    return fail(HS_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HS_ERR_INTERNAL, "unknown error");
  }
}

hs_status give(const std::string& s, char** out) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) return fail(HS_ERR_INTERNAL, "out of memory");
  std::memcpy(p, s.c_str(), s.size() + 1);
  *out = p;
  return HS_OK;
}

#define HS_REQUIRE(cond, what) \
  if (!(cond)) return fail(HS_ERR_ARGUMENT, what)

}  // namespace

extern "C" {

const char* hs_version(void) { return "0.1.0"; }

const char* hs_last_error(void) { return last_error.c_str(); }

void hs_string_free(char* s) { std::free(s); }

hs_status hs_config_default(hs_config** out) {
  HS_REQUIRE(out, "hs_config_default: out is null");
  return guarded([&] {
    *out = new hs_config{};
    return HS_OK;
  });
}

hs_status hs_config_load(const char* path, hs_config** out) {
  HS_REQUIRE(path && out, "hs_config_load: null argument");
  return guarded([&] {
    *out = new hs_config{holesim::load_config(path)};
    return HS_OK;
  });
}

hs_status hs_config_parse(const char* text, hs_config** out) {
  HS_REQUIRE(text && out, "hs_config_parse: null argument");
  return guarded([&] {
    *out = new hs_config{holesim::parse_config(text)};
    return HS_OK;
  });
}

hs_status hs_config_clone(const hs_config* config, hs_config** out) {
  HS_REQUIRE(config && out, "hs_config_clone: null argument");
  return guarded([&] {
    *out = new hs_config{*config};
    return HS_OK;
  });
}

void hs_config_free(hs_config* config) { delete config; }

hs_status hs_config_set_seed(hs_config* config, uint64_t seed) {
  HS_REQUIRE(config, "hs_config_set_seed: config is null");
  config->scenario.field.rng_seed = seed;
  last_error.clear();
  return HS_OK;
}

hs_status hs_config_set_protocol(hs_config* config, const char* protocol) {
  HS_REQUIRE(config && protocol, "hs_config_set_protocol: null argument");
  return guarded([&] {
    config->scenario.protocol = holesim::protocol_from_string(protocol);
    return HS_OK;
  });
}

hs_status hs_config_set_holes(hs_config* config, uint64_t holes) {
  HS_REQUIRE(config, "hs_config_set_holes: config is null");
  config->scenario.holes_to_inject = static_cast<std::size_t>(holes);
  last_error.clear();
  return HS_OK;
}

hs_status hs_config_validate(const hs_config* config, char** report) {
  HS_REQUIRE(config, "hs_config_validate: config is null");
  return guarded([&] {
    const auto violations = holesim::validate_scenario(config->scenario);
    std::string text;
    for (const auto& v : violations) text += "[" + holesim::to_string(v.kind) + "] " + v.message + "\n";
    if (report) {
      const hs_status s = give(text, report);
      if (s != HS_OK) return s;
    }
    if (violations.empty()) return HS_OK;
    return fail(HS_ERR_CONFIG, violations.front().message);
  });
}

hs_status hs_config_to_text(const hs_config* config, char** out) {
  HS_REQUIRE(config && out, "hs_config_to_text: null argument");
  return guarded([&] { return give(holesim::to_config_text(config->scenario), out); });
}

hs_status hs_run(const hs_config* config, hs_result** out) {
  HS_REQUIRE(config && out, "hs_run: null argument");
  return guarded([&] {
    auto* r = new hs_result{config->scenario, holesim::run_scenario(config->scenario)};
    *out = r;
    return HS_OK;
  });
}

void hs_result_free(hs_result* result) { delete result; }

hs_status hs_result_csv(const hs_result* result, char** out) {
  HS_REQUIRE(result && out, "hs_result_csv: null argument");
  return guarded([&] {
    const auto& s = result->scenario;
    return give(holesim::results_csv_header() + "\n" +
                    holesim::results_csv_row(s.protocol, static_cast<double>(s.holes_to_inject), s.seed(),
                                             result->report.metrics) +
                    "\n",
                out);
  });
}

hs_status hs_result_summary(const hs_result* result, char** out) {
  HS_REQUIRE(result && out, "hs_result_summary: null argument");
  return guarded([&] { return give(holesim::summary_text(result->scenario, result->report), out); });
}

hs_status hs_result_registration_log(const hs_result* result, char** out) {
  HS_REQUIRE(result && out, "hs_result_registration_log: null argument");
  return guarded([&] { return give(result->report.registration_log, out); });
}

hs_status hs_result_ledger_csv(const hs_result* result, char** out) {
  HS_REQUIRE(result && out, "hs_result_ledger_csv: null argument");
  return guarded([&] { return give(result->report.ledger_csv, out); });
}

hs_status hs_result_metric(const hs_result* result, const char* name, double* out) {
  HS_REQUIRE(result && name && out, "hs_result_metric: null argument");
  const auto& m = result->report.metrics;
  const std::string n = name;
  double v = 0.0;
  if (n == "T_r")
    v = static_cast<double>(m.recovery_time_steps);
  else if (n == "recovered")
    v = m.recovered ? 1.0 : 0.0;
  else if (n == "coverage")
    v = m.final_coverage_fraction;
  else if (n == "initial_coverage")
    v = m.initial_coverage_fraction;
  else if (n == "mean_dist_m")
    v = m.mean_distance_moved;
  else if (n == "energy_frac")
    v = m.mean_node_energy_spent_fraction;
  else if (n == "comp_cost")
    v = m.total_computational_cost;
  else if (n == "network_cost")
    v = m.network_computational_cost;
  else if (n == "reg_intra")
    v = static_cast<double>(m.registrations_intra);
  else if (n == "reg_inter")
    v = static_cast<double>(m.registrations_inter);
  else if (n == "hole_cells")
    v = static_cast<double>(m.hole_cells_after_injection);
  else if (n == "residual_holes")
    v = static_cast<double>(m.residual_hole_cells);
  else if (n == "protocol_bytes")
    v = static_cast<double>(m.protocol_bytes);
  else if (n == "energy_deaths")
    v = static_cast<double>(m.energy_deaths);
  else
    return fail(HS_ERR_ARGUMENT, "unknown metric '" + n + "'");
  *out = v;
  last_error.clear();
  return HS_OK;
}

hs_status hs_result_fingerprint(const hs_result* result, uint64_t* out) {
  HS_REQUIRE(result && out, "hs_result_fingerprint: null argument");
  *out = result->report.fingerprint;
  last_error.clear();
  return HS_OK;
}

hs_status hs_experiment_names(char** out) {
  HS_REQUIRE(out, "hs_experiment_names: out is null");
  return guarded([&] {
    std::string s;
    for (const auto& n : holesim::experiment_names()) s += n + "\n";
    return give(s, out);
  });
}

hs_status hs_experiment_run(const char* name, char** csv) {
  HS_REQUIRE(name && csv, "hs_experiment_run: null argument");
  return guarded([&] {
    const auto preset = holesim::experiment_preset(name);
    return give(holesim::results_csv(holesim::run_experiment(preset)), csv);
  });
}

}  // extern "C"
