#pragma once

#include "cse/engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cse {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One layer of settings; unset fields fall through to the next layer.
struct SettingsLayer {
  std::optional<Mode> mode;
  std::optional<int> fuel;
  std::optional<int> unfold_depth;
  std::optional<std::size_t> branch_limit;
  std::optional<std::string> solver;
  std::optional<unsigned> jobs;
  std::optional<bool> coalesce;
  std::optional<bool> inline_only;
  std::optional<bool> spec_only;
};

struct Settings {
  EngineConfig engine;
  std::string solver = "internal";
  unsigned jobs = 1;
  bool coalesce = false;
};

// key = value lines, '#' comments; keys as in SettingsLayer, dashes or
// underscores.
SettingsLayer parse_config(const std::string& text);
SettingsLayer config_from_file(const std::string& path);
// CSE_SOLVER and CSE_FUEL.
SettingsLayer config_from_env(const std::map<std::string, std::string>& env);
SettingsLayer config_from_process_env();

// Layers in decreasing priority.
Settings resolve(const std::vector<SettingsLayer>& layers);

}  // namespace cse
