#pragma once

// CSV / JSON emission for experiment rows. A row type provides
//   static const std::vector<std::string>& columns();
//   std::vector<Cell> cells() const;
// Reals are written with 12 significant digits in both formats so the two
// serializations carry equal values field by field.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "records/closed_forms.hpp"
#include "records/errors.hpp"

namespace records {

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

enum class Format { csv, json };

inline Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw UsageError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

template <class Row>
concept TableRow = requires(const Row& r) {
  { Row::columns() } -> std::convertible_to<const std::vector<std::string>&>;
  { r.cells() } -> std::convertible_to<std::vector<Cell>>;
};

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

inline nlohmann::ordered_json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return format_real(v);
      return std::strtod(format_real(v).c_str(), nullptr);
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

template <TableRow Row>
void write_csv(std::span<const Row> rows, std::ostream& out) {
  const auto& columns = Row::columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    const auto cells = row.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cell_text(cells[i]);
    out << '\n';
  }
}

template <TableRow Row>
nlohmann::ordered_json to_json_array(std::span<const Row> rows) {
  auto array = nlohmann::ordered_json::array();
  const auto& columns = Row::columns();
  for (const auto& row : rows) {
    const auto cells = row.cells();
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = cell_json(cells[i]);
    array.push_back(std::move(obj));
  }
  return array;
}

template <TableRow Row>
void emit(std::span<const Row> rows, Format format, std::ostream& out) {
  if (format == Format::csv)
    write_csv(rows, out);
  else
    out << to_json_array(rows).dump(2) << '\n';
  if (!out) throw std::ios_base::failure("write failed");
}

/// Writes to `path`, or standard output when path is empty or "-".
template <TableRow Row>
void emit(std::span<const Row> rows, Format format, const std::string& path, std::ostream& stdout_stream) {
  if (path.empty() || path == "-") {
    emit(rows, format, stdout_stream);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  emit(rows, format, file);
}

}  // namespace records
