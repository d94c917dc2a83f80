#pragma once

// Experiment configuration: a command path, string-valued parameters, the
// output format and the worker count. Serialized as flat key=value lines.

#include "lmom/output.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lmom {

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string command;  // e.g. "ded sum"
  std::map<std::string, std::string> params;
  OutputFormat output = OutputFormat::json_lines;
  std::size_t threads = 1;

  bool operator==(const ExperimentConfig&) const = default;

  bool has(const std::string& key) const { return params.count(key) != 0; }

  const std::string& get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw usage_error("missing parameter --" + key);
    return it->second;
  }

  long long get_int(const std::string& key) const {
    const std::string& v = get(key);
    try {
      std::size_t used = 0;
      long long x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::logic_error&) {
      throw usage_error("--" + key + " expects an integer, got '" + v + "'");
    }
  }

  double get_double(const std::string& key) const {
    const std::string& v = get(key);
    try {
      std::size_t used = 0;
      double x = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::logic_error&) {
      throw usage_error("--" + key + " expects a number, got '" + v + "'");
    }
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return b < e ? std::string(b, e) : std::string();
}

inline bool is_range_low(const std::string& key, std::string& high) {
  static const std::pair<const char*, const char*> pairs[] = {{"pmin", "pmax"}, {"lo", "hi"}, {"qmin", "qmax"}};
  for (auto [lo, hi] : pairs) {
    if (key == lo) {
      high = hi;
      return true;
    }
  }
  return false;
}
}  // namespace detail

// Ranges must be nonempty, tolerances positive, threads at least one.
inline void validate(const ExperimentConfig& c) {
  if (c.command.empty()) throw usage_error("config: command is empty");
  if (c.threads < 1) throw usage_error("config: threads must be at least 1");
  for (const auto& [key, value] : c.params) {
    std::string high;
    if (detail::is_range_low(key, high) && c.has(high) && c.get_double(key) > c.get_double(high)) {
      throw usage_error("config: empty range --" + key + " " + value + " > --" + high + " " + c.get(high));
    }
    if (key == "tol" || key.ends_with("-tol")) {
      if (!(c.get_double(key) > 0)) throw usage_error("config: --" + key + " must be positive");
    }
  }
}

inline std::string serialize(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "command=" << c.command << '\n';
  os << "output=" << to_string(c.output) << '\n';
  os << "threads=" << c.threads << '\n';
  for (const auto& [k, v] : c.params) os << k << '=' << v << '\n';
  return os.str();
}

// Parses key=value lines; '#' starts a comment. Keys other than command,
// output and threads are parameters.
inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw usage_error("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw usage_error("config line " + std::to_string(lineno) + ": empty key");
    if (key == "command") {
      c.command = value;
    } else if (key == "output") {
      if (value == "csv") {
        c.output = OutputFormat::csv;
      } else if (value == "json-lines") {
        c.output = OutputFormat::json_lines;
      } else {
        throw usage_error("config: unknown output format '" + value + "'");
      }
    } else if (key == "threads") {
      try {
        long long t = std::stoll(value);
        if (t < 1) throw std::invalid_argument(value);
        c.threads = static_cast<std::size_t>(t);
      } catch (const std::logic_error&) {
        throw usage_error("config: threads must be a positive integer");
      }
    } else {
      c.params[key] = value;
    }
  }
  return c;
}

}  // namespace lmom
