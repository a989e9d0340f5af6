#include "config.hpp"

#include <fstream>
#include <sstream>

namespace prodgeo::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    cfg.values[key] = value;
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

std::string Config::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double Config::num(const std::string& key) const {
  const std::string v = get(key);
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("");
    return x;
  } catch (...) {
    throw ConfigError("config key " + key + " is not a number: " + v);
  }
}

double Config::num(const std::string& key, double fallback) const {
  return has(key) ? num(key) : fallback;
}

int Config::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  return int(num(key));
}

std::vector<double> Config::num_list(const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(get(key));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw ConfigError("config key " + key + " holds a malformed list");
    }
  }
  if (out.empty()) throw ConfigError("config key " + key + " holds an empty list");
  return out;
}

std::vector<int> Config::int_list(const std::string& key) const {
  std::vector<int> out;
  for (double v : num_list(key)) out.push_back(int(v));
  return out;
}

}  // namespace prodgeo::cli
