#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dswkit/errors.hpp"

namespace dswkit {

/// Flat `key = value` run configuration. Blank lines and `#` comments are
/// ignored; a repeated key keeps its last value.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

inline std::vector<ConfigEntry> parse_config(const std::string& text,
                                             const std::string& source = "config") {
  std::vector<ConfigEntry> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    ConfigEntry e{detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)), lineno};
    if (e.key.empty()) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    }
    for (char ch : e.key) {
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) {
        throw ConfigError(source + ":" + std::to_string(lineno) + ": invalid key '" + e.key + "'");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<ConfigEntry> load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

/// Strict number parsing: the whole string must be a finite number.
inline double parse_number(const std::string& key, const std::string& s) {
  const std::string t = detail::trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw ConfigError("'" + key + "' expects a number, got '" + s + "'");
  }
  return v;
}

inline std::vector<double> parse_number_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!detail::trim(item).empty()) out.push_back(parse_number(key, item));
  }
  return out;
}

inline std::vector<std::string> parse_word_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace dswkit
