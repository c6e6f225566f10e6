#include "holesim/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "holesim/error.hpp"

namespace holesim {

namespace {

namespace pt = boost::property_tree;

struct Key {
  const char* section;
  const char* name;
  std::function<void(Scenario&, const std::string&)> set;
  std::function<std::string(const Scenario&)> get;
};

std::string qualified(const Key& k) { return std::string(k.section) + "." + k.name; }

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("config key '" + key + "': '" + value + "' is not " + expected);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

template <typename T>
T to_unsigned(const std::string& key, const std::string& v) {
  T out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "a boolean");
}

std::string show(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string show(std::size_t v) { return std::to_string(v); }
std::string show(std::uint64_t v, int) { return std::to_string(v); }
std::string show(bool v) { return v ? "true" : "false"; }

#define HS_DOUBLE(sec, name, member)                                                             \
  Key {                                                                                          \
    sec, name, [](Scenario& s, const std::string& v) { s.member = to_double(sec "." name, v); }, \
        [](const Scenario& s) { return show(s.member); }                                         \
  }
#define HS_SIZE(sec, name, member)                                                                          \
  Key {                                                                                                     \
    sec, name, [](Scenario& s, const std::string& v) { s.member = to_unsigned<std::size_t>(sec "." name, v); }, \
        [](const Scenario& s) { return show(s.member); }                                                    \
  }
#define HS_BOOL(sec, name, member)                                                             \
  Key {                                                                                        \
    sec, name, [](Scenario& s, const std::string& v) { s.member = to_bool(sec "." name, v); }, \
        [](const Scenario& s) { return show(s.member); }                                       \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      HS_DOUBLE("field", "width", field.field_width),
      HS_DOUBLE("field", "height", field.field_height),
      HS_DOUBLE("field", "sensing_radius", field.sensing_radius),
      HS_DOUBLE("field", "transmission_range", field.transmission_range),
      HS_DOUBLE("field", "grid_cell_size", field.grid_cell_size),
      HS_DOUBLE("field", "packet_size", field.packet_size),
      HS_DOUBLE("field", "initial_energy", field.initial_energy),
      HS_DOUBLE("field", "tx_power", field.tx_power),
      Key{"field", "coverage_mode",
          [](Scenario& s, const std::string& v) {
            if (v == "disk")
              s.field.coverage_mode = CoverageMode::disk;
            else if (v == "node_cell")
              s.field.coverage_mode = CoverageMode::node_cell;
            else
              bad_value("field.coverage_mode", v, "disk or node_cell");
          },
          [](const Scenario& s) {
            return std::string(s.field.coverage_mode == CoverageMode::disk ? "disk" : "node_cell");
          }},

      HS_SIZE("layout", "zones_x", layout.zones_x),
      HS_SIZE("layout", "zones_y", layout.zones_y),
      HS_SIZE("layout", "clusters_per_zone", layout.clusters_per_zone),
      HS_SIZE("layout", "nodes_per_zone", layout.nodes_per_zone),
      HS_SIZE("layout", "phi_min", layout.phi_min),
      HS_SIZE("layout", "phi_max", layout.phi_max),
      HS_SIZE("layout", "test_zone", layout.test_zone),
      HS_SIZE("layout", "test_cluster", layout.test_cluster),
      HS_BOOL("layout", "nearest_to_border", layout.nearest_to_border),

      Key{"scenario", "protocol",
          [](Scenario& s, const std::string& v) {
            try {
              s.protocol = protocol_from_string(v);
            } catch (const ConfigError&) {
              bad_value("scenario.protocol", v, "hybrid or ssoa");
            }
          },
          [](const Scenario& s) { return to_string(s.protocol); }},
      HS_SIZE("scenario", "holes", holes_to_inject),
      Key{"scenario", "placement",
          [](Scenario& s, const std::string& v) {
            try {
              s.placement = placement_from_string(v);
            } catch (const ConfigError&) {
              bad_value("scenario.placement", v, "uniform_in_test_cluster or concentrated");
            }
          },
          [](const Scenario& s) { return to_string(s.placement); }},
      Key{"scenario", "seed",
          [](Scenario& s, const std::string& v) {
            s.field.rng_seed = to_unsigned<std::uint64_t>("scenario.seed", v);
          },
          [](const Scenario& s) { return show(s.field.rng_seed, 0); }},
      HS_SIZE("scenario", "max_steps", max_steps),
      HS_DOUBLE("scenario", "step_ms", step_ms),

      HS_DOUBLE("relocation", "step_length", hybrid.step_length),
      HS_BOOL("relocation", "stall_helpers", hybrid.stall_helpers),
      HS_SIZE("relocation", "patience", hybrid.patience),

      HS_DOUBLE("forces", "d_threshold", forces.d_threshold),
      HS_DOUBLE("forces", "k_att", forces.k_att),
      HS_DOUBLE("forces", "k_rep", forces.k_rep),
      HS_DOUBLE("forces", "k_b", forces.k_b),
      HS_DOUBLE("forces", "margin", forces.margin),
      HS_DOUBLE("forces", "neighbor_range", forces.neighbor_range),
      HS_DOUBLE("forces", "gain", forces.gain),
      HS_DOUBLE("forces", "max_step", forces.max_step),
      HS_DOUBLE("forces", "epsilon", forces.epsilon),
      HS_SIZE("forces", "max_rounds", forces.max_rounds),

      HS_DOUBLE("protocol", "link_latency_ms", protocol_params.link_latency_ms),
      HS_DOUBLE("protocol", "auth_fast_ms", protocol_params.auth_fast_ms),
      HS_DOUBLE("protocol", "auth_full_ms", protocol_params.auth_full_ms),
      HS_SIZE("protocol", "handshake_bytes", protocol_params.handshake_bytes),
      HS_SIZE("protocol", "register_bytes", protocol_params.register_bytes),

      HS_DOUBLE("energy", "bitrate", energy.bitrate),
      HS_DOUBLE("energy", "e_move", energy.joules_per_meter),
      HS_DOUBLE("energy", "sensing_per_step", energy.sensing_per_step),
      HS_DOUBLE("energy", "k1", energy.cost.k1),
      HS_DOUBLE("energy", "k2", energy.cost.k2),
      HS_DOUBLE("energy", "k3", energy.cost.k3),
      HS_DOUBLE("energy", "k4", energy.cost.k4),
      HS_DOUBLE("energy", "processing_rate", energy.processing_rate),
      HS_DOUBLE("energy", "bandwidth", energy.bandwidth),
      HS_DOUBLE("energy", "cost_to_joule", energy.cost_to_joule),

      HS_DOUBLE("ssoa", "single_tier_length", ssoa.single_tier_length),
      HS_SIZE("ssoa", "max_redeploy_rounds", ssoa.max_redeploy_rounds),
      HS_DOUBLE("ssoa", "overhead_per_evaluation", ssoa.overhead_per_evaluation),
  };
  return table;
}

#undef HS_DOUBLE
#undef HS_SIZE
#undef HS_BOOL

const Key* find_key(const std::string& section, const std::string& name) {
  for (const auto& k : keys())
    if (section == k.section && name == k.name) return &k;
  return nullptr;
}

bool known_section(const std::string& section) {
  for (const auto& k : keys())
    if (section == k.section) return true;
  return false;
}

// Drops trailing "# ..." or "; ..." comments that follow whitespace.
std::string strip_inline_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    for (std::size_t i = 1; i < line.size(); ++i)
      if ((line[i] == '#' || line[i] == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line = line.substr(0, i);
        break;
      }
    out.append(line);
    if (end < text.size()) out.push_back('\n');
    start = end + 1;
  }
  return out;
}

}  // namespace

Scenario parse_config(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{strip_inline_comments(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config parse error at line " + std::to_string(e.line()) + ": " + e.message());
  }
  Scenario s;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("config key '" + section + "' must be inside a section");
    if (!known_section(section)) throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [name, value] : body) {
      const Key* k = find_key(section, name);
      if (!k) throw ConfigError("unknown config key '" + section + "." + name + "'");
      k->set(s, value.data());
    }
  }
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const Scenario& s) {
  std::string out;
  std::string current;
  for (const auto& k : keys()) {
    if (current != k.section) {
      if (!current.empty()) out += "\n";
      current = k.section;
      out += "[" + current + "]\n";
    }
    out += std::string(k.name) + " = " + k.get(s) + "\n";
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : keys()) out.push_back(qualified(k));
  return out;
}

}  // namespace holesim
