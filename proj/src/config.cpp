#include "cse/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cse {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
    return v.substr(1, v.size() - 2);
  return v;
}

long long to_int(const std::string& key, const std::string& v, long long lo) {
  try {
    std::size_t n = 0;
    long long x = std::stoll(v, &n);
    if (n != v.size() || x < lo) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer >= " + std::to_string(lo) + ", got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

void set(SettingsLayer& l, std::string key, const std::string& v) {
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "mode") {
    auto m = mode_from_name(v);
    if (!m) throw ConfigError("mode: expected ox, ux or ex, got '" + v + "'");
    l.mode = *m;
  } else if (key == "fuel") {
    l.fuel = static_cast<int>(to_int(key, v, 0));
  } else if (key == "unfold_depth") {
    l.unfold_depth = static_cast<int>(to_int(key, v, 0));
  } else if (key == "branch_limit") {
    l.branch_limit = static_cast<std::size_t>(to_int(key, v, 1));
  } else if (key == "solver") {
    if (v != "internal" && v.rfind("smt:", 0) != 0) throw ConfigError("solver: expected internal or smt:<path>");
    l.solver = v;
  } else if (key == "jobs") {
    l.jobs = static_cast<unsigned>(to_int(key, v, 1));
  } else if (key == "coalesce") {
    l.coalesce = to_bool(key, v);
  } else if (key == "inline_only") {
    l.inline_only = to_bool(key, v);
  } else if (key == "spec_only") {
    l.spec_only = to_bool(key, v);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

}  // namespace

SettingsLayer parse_config(const std::string& text) {
  SettingsLayer l;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
    try {
      set(l, trim(line.substr(0, eq)), unquote(trim(line.substr(eq + 1))));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return l;
}

SettingsLayer config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SettingsLayer config_from_env(const std::map<std::string, std::string>& env) {
  SettingsLayer l;
  if (auto it = env.find("CSE_SOLVER"); it != env.end() && !it->second.empty()) set(l, "solver", it->second);
  if (auto it = env.find("CSE_FUEL"); it != env.end() && !it->second.empty()) set(l, "fuel", it->second);
  return l;
}

SettingsLayer config_from_process_env() {
  std::map<std::string, std::string> env;
  for (const char* k : {"CSE_SOLVER", "CSE_FUEL"})
    if (const char* v = std::getenv(k)) env[k] = v;
  return config_from_env(env);
}

Settings resolve(const std::vector<SettingsLayer>& layers) {
  Settings s;
  auto pick = [&](auto field, auto& out) {
    for (const auto& l : layers)
      if (l.*field) {
        out = *(l.*field);
        return;
      }
  };
  pick(&SettingsLayer::mode, s.engine.mode);
  pick(&SettingsLayer::fuel, s.engine.fuel);
  pick(&SettingsLayer::unfold_depth, s.engine.unfold_depth);
  pick(&SettingsLayer::branch_limit, s.engine.branch_limit);
  pick(&SettingsLayer::solver, s.solver);
  pick(&SettingsLayer::jobs, s.jobs);
  pick(&SettingsLayer::coalesce, s.coalesce);
  pick(&SettingsLayer::inline_only, s.engine.inline_only);
  pick(&SettingsLayer::spec_only, s.engine.spec_only);
  return s;
}

}  // namespace cse
