#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace prodgeo::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value configuration with dotted section names:
//   chart.kind = family
//   family.p = 2.0
// '#' starts a comment; blank lines are ignored.
struct Config {
  std::map<std::string, std::string> values;

  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::vector<double> num_list(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { values[key] = value; }
};

}  // namespace prodgeo::cli
