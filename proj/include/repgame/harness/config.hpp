#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace repgame::harness {

/// Raised for anything wrong with a scenario file; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// INI-style scenario file: `[section]` headers, `key = value` lines, `#` or
/// `;` comments. Section names may contain dots (`partner.grim1`); keys may not.
class Config {
 public:
  static Config load(const std::filesystem::path& path);
  static Config parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key, const std::string& fallback) const;

  long long get_int(const std::string& section, const std::string& key, long long fallback) const;
  long long require_int(const std::string& section, const std::string& key) const;
  unsigned long long get_u64(const std::string& section, const std::string& key, unsigned long long fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);
  void erase(const std::string& section, const std::string& key);
  /// "section.key" -> (section, key), split at the last dot.
  static std::pair<std::string, std::string> split_path(const std::string& dotted);

  const std::map<std::string, std::map<std::string, std::string>>& sections() const { return sections_; }
  nlohmann::json to_json() const;
  std::string to_ini() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Comma- or whitespace-separated tokens.
std::vector<std::string> split_list(const std::string& text);

}  // namespace repgame::harness
