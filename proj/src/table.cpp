#include "fockstat/table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "fockstat/errors.hpp"
#include "fockstat/format.hpp"

namespace fockstat {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::size_t Table::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw UsageError("no column named '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

Format parse_format(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "csv") return Format::kCsv;
  if (lower == "json") return Format::kJson;
  throw UsageError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

nlohmann::ordered_json base_metadata(const SeriesControl& ctrl) {
  nlohmann::ordered_json meta;
  meta["library"] = "fockstat";
  meta["version"] = std::string(kLibraryVersion);
  meta["series_control"] = {{"rel_tol", ctrl.rel_tol},
                            {"max_terms", ctrl.max_terms},
                            {"consecutive_small", ctrl.consecutive_small}};
  return meta;
}

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return csv_field(v);
        }
      },
      cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << cell_text(row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& metadata) {
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      obj[table.columns[i]] = cell_json(row[i]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void emit(const Table& table, Format format, const std::filesystem::path& path,
          const nlohmann::ordered_json& metadata) {
  auto write = [&](std::ostream& out) {
    if (format == Format::kCsv) {
      write_csv(out, table);
    } else {
      write_json(out, table, metadata);
    }
  };
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to", "stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file", path);
  write(out);
  out.close();
  if (!out) throw IoError("failed writing output file", path);
}

}  // namespace fockstat
