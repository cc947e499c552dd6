#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qudit/core/error.hpp"
#include "qudit/core/matrix.hpp"

namespace qudit {

/// Doubles are always written with 17 significant digits so they round-trip.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// {"rows": R, "cols": C, "entries": [[re, im], ...]} in row-major order.
inline void write_matrix_json(std::ostream& os, const ComplexMatrix& m) {
  os << "{\"rows\": " << m.rows() << ", \"cols\": " << m.cols() << ", \"entries\": [";
  bool first = true;
  for (const Complex& z : m.entries()) {
    if (!first) os << ", ";
    first = false;
    os << '[' << format_double(z.real()) << ", " << format_double(z.imag()) << ']';
  }
  os << "]}";
}

inline std::string matrix_to_json(const ComplexMatrix& m) {
  std::ostringstream os;
  write_matrix_json(os, m);
  return os.str();
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array()) throw InvalidArgument("\"entries\" must be an array");
    std::vector<Complex> values;
    values.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument("entry must be [re, im]");
      values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(values));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("malformed matrix JSON: ") + ex.what());
  }
}

/// Minimal ordered JSON object writer; keeps key order and the 17-digit
/// number format stable across runs.
class JsonObjectWriter {
 public:
  explicit JsonObjectWriter(std::ostream& os) : os_(os) { os_ << '{'; }
  JsonObjectWriter(const JsonObjectWriter&) = delete;
  JsonObjectWriter& operator=(const JsonObjectWriter&) = delete;
  ~JsonObjectWriter() { os_ << "\n}\n"; }

  void field(std::string_view key, double v) { emit_key(key); os_ << format_double(v); }
  void field(std::string_view key, int v) { emit_key(key); os_ << v; }
  void field(std::string_view key, std::string_view v) {
    emit_key(key);
    os_ << '"' << v << '"';
  }
  void field(std::string_view key, Complex z) {
    emit_key(key);
    os_ << '[' << format_double(z.real()) << ", " << format_double(z.imag()) << ']';
  }
  void field(std::string_view key, const ComplexMatrix& m) {
    emit_key(key);
    write_matrix_json(os_, m);
  }

 private:
  void emit_key(std::string_view key) {
    os_ << (first_ ? "\n  " : ",\n  ") << '"' << key << "\": ";
    first_ = false;
  }

  std::ostream& os_;
  bool first_ = true;
};

}  // namespace qudit
