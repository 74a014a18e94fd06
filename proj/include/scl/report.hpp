#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "scl/exact.hpp"
#include "scl/verify.hpp"

namespace scl {

/// One report value. Rationals are written as "p/q" strings, never floats.
using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string, ExactRational>;

enum class Format { json, csv };

/// "json" or "csv"; throws std::invalid_argument otherwise.
Format parse_format(std::string_view text);

/// Rows of named cells with a fixed column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<Cell> row);
};

using Record = std::vector<std::pair<std::string, Cell>>;

nlohmann::ordered_json to_json(const Cell& cell);
nlohmann::ordered_json to_json(const Table& table);
nlohmann::ordered_json to_json(const Record& record);

/// JSON array of row objects (`[]` when empty) or CSV with a header line.
std::string emit_report(const Table& table, Format format);
/// A single JSON object, or a one-row CSV.
std::string emit_record(const Record& record, Format format);

std::string format_double(double v);

/// Wall-clock columns are opt-in so that default output is reproducible.
Table to_table(const ConvergenceReport& report, bool timing = false);
/// Means and covariances in one table, distinguished by the "stat" column.
Table to_table(const CycleReport& report);

}  // namespace scl
