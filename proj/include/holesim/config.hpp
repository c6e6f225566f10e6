#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "holesim/engine.hpp"

namespace holesim {

// Scenario files are INI documents with [field], [layout], [scenario], [relocation], [forces],
// [protocol], [energy] and [ssoa] sections. Missing keys keep their defaults; unknown sections,
// unknown keys and malformed values raise ConfigError naming the offending key.
Scenario parse_config(std::string_view text);
Scenario load_config(const std::string& path);

// Every key with its effective value, in the same format parse_config reads.
std::string to_config_text(const Scenario& scenario);

// "section.key" for every accepted key, in documentation order.
std::vector<std::string> config_keys();

}  // namespace holesim
