#pragma once

// Flat result records written as JSON lines or CSV. Floats use 15
// significant digits; rationals travel as "num/den" strings.

#include "lmom/rational.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace lmom {

enum class OutputFormat { json_lines, csv };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json-lines"; }

using Field = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

struct Record {
  std::vector<std::pair<std::string, Field>> fields;

  Record& add(std::string key, Field value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Record& add(std::string key, const char* value) { return add(std::move(key), Field(std::string(value))); }
  template <class T>
    requires std::is_arithmetic_v<T>
  Record& add(std::string key, T value) {
    if constexpr (std::is_same_v<T, bool>) {
      return add(std::move(key), Field(value));
    } else if constexpr (std::is_floating_point_v<T>) {
      return add(std::move(key), Field(static_cast<double>(value)));
    } else if constexpr (std::is_signed_v<T>) {
      return add(std::move(key), Field(static_cast<std::int64_t>(value)));
    } else {
      return add(std::move(key), Field(static_cast<std::uint64_t>(value)));
    }
  }
  Record& add(std::string key, const Rational& value) { return add(std::move(key), Field(value.str())); }
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace detail {
inline std::string json_value(const Field& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return nlohmann::json(v).dump();
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? format_double(v) : nlohmann::json(format_double(v)).dump();
        } else {
          return std::to_string(v);
        }
      },
      f);
}

inline std::string csv_value(const Field& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string out = "\"";
          for (char c : v) {
            if (c == '"') out += '"';
            out += c;
          }
          return out + "\"";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      f);
}
}  // namespace detail

// CSV emits a header whenever the key list changes.
class RecordWriter {
 public:
  RecordWriter(std::ostream& os, OutputFormat format) : os_(os), format_(format) {}

  void write(const Record& r) {
    if (format_ == OutputFormat::json_lines) {
      os_ << '{';
      for (std::size_t i = 0; i < r.fields.size(); ++i) {
        if (i) os_ << ',';
        os_ << nlohmann::json(r.fields[i].first).dump() << ':' << detail::json_value(r.fields[i].second);
      }
      os_ << "}\n";
      return;
    }
    std::vector<std::string> keys;
    for (const auto& [k, v] : r.fields) keys.push_back(k);
    if (keys != header_) {
      header_ = keys;
      for (std::size_t i = 0; i < keys.size(); ++i) os_ << (i ? "," : "") << detail::csv_value(Field(keys[i]));
      os_ << '\n';
    }
    for (std::size_t i = 0; i < r.fields.size(); ++i) os_ << (i ? "," : "") << detail::csv_value(r.fields[i].second);
    os_ << '\n';
  }

  OutputFormat format() const { return format_; }

 private:
  std::ostream& os_;
  OutputFormat format_;
  std::vector<std::string> header_;
};

}  // namespace lmom
