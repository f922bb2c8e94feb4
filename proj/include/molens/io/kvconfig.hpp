#pragma once

#include <map>
#include <string>
#include <vector>

namespace molens::io {

double parse_double_value(const std::string& value, const std::string& key);
long parse_long_value(const std::string& value, const std::string& key);

// Flat key-value config: "dotted.key = value" lines, '#' comments. Later
// assignments win, so CLI overrides are applied by a second set() pass.
class KvConfig {
public:
  static KvConfig load(const std::string& path);
  static KvConfig parse(const std::string& text, const std::string& origin);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<int> get_int_list(const std::string& key,
                                const std::vector<int>& fallback) const;
  std::vector<double> get_double_list(
      const std::string& key, const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

  // Sorted "key = value" lines, suitable for echoing the effective config.
  std::string dump() const;

private:
  std::map<std::string, std::string> entries_;
};

}  // namespace molens::io
