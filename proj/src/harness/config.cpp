#include "repgame/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace repgame::harness {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token += ch;
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

Config Config::parse(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config: line " + std::to_string(e.line()) + ": " + e.message());
  }
  Config c;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      if (section != "sweep" && key.find('.') != std::string::npos) throw ConfigError("config: key '" + key + "' must not contain '.'");
      c.sections_[section][key] = trim(value.data());
    }
    c.sections_.try_emplace(section);
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Config::has_section(const std::string& section) const { return sections_.count(section) > 0; }

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw ConfigError("config: missing [" + section + "] " + key);
  return sections_.at(section).at(key);
}

std::string Config::get(const std::string& section, const std::string& key, const std::string& fallback) const {
  return has(section, key) ? sections_.at(section).at(key) : fallback;
}

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw ConfigError("config: " + where + " = '" + text + "' is not a valid number");
  }
  return value;
}

}  // namespace

long long Config::get_int(const std::string& section, const std::string& key, long long fallback) const {
  return has(section, key) ? parse_number<long long>(get(section, key), "[" + section + "] " + key) : fallback;
}

long long Config::require_int(const std::string& section, const std::string& key) const {
  return parse_number<long long>(get(section, key), "[" + section + "] " + key);
}

unsigned long long Config::get_u64(const std::string& section, const std::string& key,
                                   unsigned long long fallback) const {
  return has(section, key) ? parse_number<unsigned long long>(get(section, key), "[" + section + "] " + key)
                           : fallback;
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? parse_number<double>(get(section, key), "[" + section + "] " + key) : fallback;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("config: [" + section + "] " + key + " = '" + v + "' is not a boolean");
}

std::vector<std::string> Config::get_list(const std::string& section, const std::string& key) const {
  return has(section, key) ? split_list(get(section, key)) : std::vector<std::string>{};
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

std::pair<std::string, std::string> Config::split_path(const std::string& dotted) {
  const auto dot = dotted.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == dotted.size()) {
    throw ConfigError("config: '" + dotted + "' is not of the form section.key");
  }
  return {dotted.substr(0, dot), dotted.substr(dot + 1)};
}

void Config::erase(const std::string& section, const std::string& key) {
  const auto it = sections_.find(section);
  if (it == sections_.end()) return;
  it->second.erase(key);
  if (it->second.empty()) sections_.erase(it);
}

nlohmann::json Config::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [section, body] : sections_) {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [key, value] : body) s[key] = value;
    j[section] = s;
  }
  return j;
}

std::string Config::to_ini() const {
  std::ostringstream out;
  for (const auto& [section, body] : sections_) {
    out << '[' << section << "]\n";
    for (const auto& [key, value] : body) out << key << " = " << value << '\n';
    out << '\n';
  }
  return out.str();
}

}  // namespace repgame::harness
