#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fockstat/moments.hpp"

namespace fockstat {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

/// Empty cells (std::monostate) become an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column_index(std::string_view name) const;
};

enum class Format { kCsv, kJson };

Format parse_format(std::string_view text);

/// Library version and series settings; no timestamps so that identical runs
/// produce identical bytes.
nlohmann::ordered_json base_metadata(const SeriesControl& ctrl);

/// Header row plus one line per row; fields containing `,`, `"` or line breaks
/// are quoted with doubled inner quotes.
void write_csv(std::ostream& out, const Table& table);

/// {"metadata": {...}, "rows": [{column: value, ...}, ...]}
void write_json(std::ostream& out, const Table& table, const nlohmann::ordered_json& metadata);

/// Writes to `path`, or to stdout when path is "-". Throws IoError.
void emit(const Table& table, Format format, const std::filesystem::path& path,
          const nlohmann::ordered_json& metadata);

}  // namespace fockstat
