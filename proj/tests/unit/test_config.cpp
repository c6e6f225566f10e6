#include <doctest.h>

#include <string>

#include "holesim/config.hpp"
#include "holesim/engine.hpp"
#include "holesim/error.hpp"
#include "holesim/experiments.hpp"

using namespace holesim;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("empty text gives the documented defaults") {
    const Scenario s = parse_config("");
    CHECK(to_config_text(s) == to_config_text(Scenario{}));
    CHECK(validate_scenario(s).empty());
  }

  TEST_CASE("values land in the scenario") {
    const Scenario s = parse_config(
        "# comment\n[scenario]\nprotocol = ssoa\nholes = 42\nseed = 9\nplacement = concentrated\n"
        "[layout]\nphi_min = 100\nphi_max=140\n[field]\ninitial_energy = 30\ncoverage_mode = node_cell\n"
        "[energy]\nk3 = 0.25\n[relocation]\nstall_helpers = false\n");
    CHECK(s.protocol == Protocol::ssoa);
    CHECK(s.holes_to_inject == 42);
    CHECK(s.seed() == 9);
    CHECK(s.placement == HolePlacement::concentrated);
    CHECK(s.layout.phi_min == 100);
    CHECK(s.layout.phi_max == 140);
    CHECK(s.field.initial_energy == 30.0);
    CHECK(s.field.coverage_mode == CoverageMode::node_cell);
    CHECK(s.energy.cost.k3 == 0.25);
    CHECK_FALSE(s.hybrid.stall_helpers);
  }

  TEST_CASE("full-line and trailing comments") {
    const Scenario s = parse_config("; note\n# note\n[field]\nwidth = 240   # m\nheight = 240\t; m\n[forces]\n# all defaults\n");
    CHECK(s.field.field_width == 240.0);
    CHECK(s.field.field_height == 240.0);
  }

  TEST_CASE("round trip through the effective config text") {
    Scenario s;
    s.holes_to_inject = 17;
    s.field.tx_power = 0.123456789;
    s.energy.sensing_per_step = 3e-7;
    s.protocol = Protocol::ssoa;
    const std::string text = to_config_text(s);
    CHECK(to_config_text(parse_config(text)) == text);
  }

  TEST_CASE("unknown keys and sections are named") {
    CHECK(error_of("[field]\nbogus = 1\n").find("field.bogus") != std::string::npos);
    CHECK(error_of("[nowhere]\nx = 1\n").find("nowhere") != std::string::npos);
    CHECK(error_of("stray = 1\n").find("stray") != std::string::npos);
  }

  TEST_CASE("malformed values are rejected") {
    CHECK(error_of("[field]\nwidth = wide\n").find("field.width") != std::string::npos);
    CHECK(error_of("[layout]\nphi_min = -3\n").find("layout.phi_min") != std::string::npos);
    CHECK(error_of("[scenario]\nprotocol = tcp\n").find("scenario.protocol") != std::string::npos);
    CHECK(error_of("[relocation]\nstall_helpers = maybe\n").find("relocation.stall_helpers") != std::string::npos);
    CHECK_FALSE(error_of("[field\nwidth = 1\n").empty());
  }

  TEST_CASE("every listed key is settable") {
    const auto keys = config_keys();
    CHECK(keys.size() > 40);
    CHECK(std::find(keys.begin(), keys.end(), "energy.e_move") != keys.end());
    CHECK(std::find(keys.begin(), keys.end(), "forces.d_threshold") != keys.end());
  }

  TEST_CASE("load_config reports unreadable files") { CHECK_THROWS_AS(load_config("/nonexistent/x.ini"), ConfigError); }

  TEST_CASE("experiment presets") {
    const auto names = experiment_names();
    REQUIRE(names.size() == 6);
    CHECK(names.front() == "fig8");
    CHECK(names.back() == "fig13");
    for (const auto& n : names) {
      const auto p = experiment_preset(n);
      CHECK(p.name == n);
      CHECK(validate_scenario(p.base).empty());
      CHECK(p.values.size() >= 5);
      CHECK(p.protocols.size() == 2);
    }
    CHECK(experiment_preset("fig13").base.field.initial_energy == 30.0);
    CHECK(experiment_preset("fig11").axis == SweepAxis::density);
    CHECK(experiment_preset("fig8").base.layout.phi_min == 124);
    CHECK(experiment_preset("fig8").base.layout.phi_max == 135);
    CHECK(experiment_preset("fig8").base.layout.nodes_per_zone == 674);
    CHECK_THROWS_AS(experiment_preset("fig7"), ConfigError);
  }
}
