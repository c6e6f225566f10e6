#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "holesim/holesim.h"

namespace {

struct ConfigDeleter {
  void operator()(hs_config* c) const { hs_config_free(c); }
};
struct ResultDeleter {
  void operator()(hs_result* r) const { hs_result_free(r); }
};
using ConfigPtr = std::unique_ptr<hs_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<hs_result, ResultDeleter>;

// Maps a library status to the process exit code.
int exit_code(hs_status s) {
  switch (s) {
    case HS_OK: return 0;
    case HS_ERR_CONFIG: return 2;
    case HS_ERR_INVARIANT: return 3;
    case HS_ERR_IO: return 4;
    default: return 1;
  }
}

int report(hs_status s, const char* what) {
  std::cerr << "holesim: " << what << ": " << hs_last_error() << "\n";
  return exit_code(s);
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  hs_string_free(s);
  return out;
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

std::string commented(const std::string& title, const std::string& body) {
  std::string out = "# " + title + "\n";
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    const std::string line = body.substr(start, end - start);
    out += line.empty() ? "#\n" : "#   " + line + "\n";
    start = end + 1;
  }
  return out;
}

int load(const std::string& path, ConfigPtr& config) {
  hs_config* raw = nullptr;
  const hs_status s = hs_config_load(path.c_str(), &raw);
  if (s != HS_OK) return report(s, "config");
  config.reset(raw);
  return 0;
}

int cmd_validate(const std::string& path) {
  ConfigPtr config;
  if (int rc = load(path, config)) return rc;
  char* text = nullptr;
  char* violations = nullptr;
  const hs_status s = hs_config_validate(config.get(), &violations);
  const std::string listing = take(violations);
  if (s != HS_OK) {
    std::cerr << listing;
    return report(s, "invalid config");
  }
  hs_config_to_text(config.get(), &text);
  std::cout << take(text);
  return 0;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, const std::string& protocol,
            const std::string& out) {
  ConfigPtr config;
  if (int rc = load(path, config)) return rc;
  if (seed) hs_config_set_seed(config.get(), *seed);
  if (!protocol.empty()) {
    const hs_status s = hs_config_set_protocol(config.get(), protocol.c_str());
    if (s != HS_OK) return report(s, "protocol");
  }

  hs_result* raw = nullptr;
  const hs_status s = hs_run(config.get(), &raw);
  if (s != HS_OK) return report(s, "run");
  ResultPtr result(raw);

  char* csv = nullptr;
  char* summary = nullptr;
  hs_result_csv(result.get(), &csv);
  hs_result_summary(result.get(), &summary);
  const std::string table = take(csv);
  if (out.empty()) {
    std::cout << table;
  } else if (!write_file(out, table)) {
    std::cerr << "holesim: cannot write '" << out << "'\n";
    return exit_code(HS_ERR_IO);
  }

  // Summary and effective config follow the table as '#' comment lines.
  char* text = nullptr;
  hs_config_to_text(config.get(), &text);
  std::cout << "\n" << commented("summary", take(summary)) << commented("effective config", take(text));
  return 0;
}

int cmd_experiment(const std::string& name, const std::string& dir) {
  char* csv = nullptr;
  const hs_status s = hs_experiment_run(name.c_str(), &csv);
  if (s != HS_OK) return report(s, "experiment");
  const std::string table = take(csv);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = std::filesystem::path(dir) / (name + ".csv");
  if (!write_file(path, table)) {
    std::cerr << "holesim: cannot write '" << path.string() << "'\n";
    return exit_code(HS_ERR_IO);
  }
  std::cerr << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage-hole recovery simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hs_version()));

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string protocol;
  std::string out;
  auto* run = app.add_subcommand("run", "Run one scenario and print its results row");
  run->add_option("config", config_path, "Scenario config (INI)")->required();
  run->add_option("--seed", seed, "Override scenario.seed");
  run->add_option("--protocol", protocol, "Override scenario.protocol")
      ->check(CLI::IsMember({"hybrid", "ssoa"}));
  run->add_option("--out", out, "Write the CSV here instead of stdout");

  std::string name;
  std::string dir = ".";
  char* names = nullptr;
  hs_experiment_names(&names);
  std::string known = take(names);
  for (auto& c : known)
    if (c == '\n') c = ' ';
  auto* exp = app.add_subcommand("experiment", "Run a preset sweep and write <name>.csv");
  exp->add_option("name", name, "One of: " + known)->required();
  exp->add_option("--out", dir, "Output directory");

  std::string validate_path;
  auto* val = app.add_subcommand("validate", "Check a config and print its effective values");
  val->add_option("config", validate_path, "Scenario config (INI)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*run) return cmd_run(config_path, seed, protocol, out);
  if (*exp) return cmd_experiment(name, dir);
  return cmd_validate(validate_path);
}
