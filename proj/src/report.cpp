#include "scl/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace scl {

Format parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw std::invalid_argument("unknown output format '" + std::string(text) + "' (expected json or csv)");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("report row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, ExactRational>) {
          return to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
          return v;
        } else {
          return v;
        }
      },
      cell);
}

nlohmann::ordered_json to_json(const Table& table) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = to_json(row[c]);
    out.push_back(std::move(obj));
  }
  return out;
}

nlohmann::ordered_json to_json(const Record& record) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record) obj[k] = to_json(v);
  return obj;
}

namespace {

std::string csv_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, ExactRational>) {
          return to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

}  // namespace

std::string emit_report(const Table& table, Format format) {
  if (format == Format::json) return to_json(table).dump(2) + "\n";
  std::string out = csv_line(table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const auto& c : row) fields.push_back(csv_text(c));
    out += csv_line(fields);
  }
  return out;
}

std::string emit_record(const Record& record, Format format) {
  if (format == Format::json) return to_json(record).dump(2) + "\n";
  Table t;
  for (const auto& [k, v] : record) t.columns.push_back(k);
  std::vector<Cell> row;
  for (const auto& [k, v] : record) row.push_back(v);
  t.add_row(std::move(row));
  return emit_report(t, format);
}

namespace {

Cell optional_rational(const std::optional<ExactRational>& q) {
  return q ? Cell(*q) : Cell(std::monostate{});
}

}  // namespace

Table to_table(const ConvergenceReport& r, bool timing) {
  Table t;
  t.columns = {"kind", "g", "spec", "n", "method", "joint", "joint_exact", "product", "product_exact",
               "gap", "prediction", "prediction_decimal", "abs_error", "n_abs_error", "stderr",
               "gap_stderr", "samples", "seed"};
  if (timing) t.columns.push_back("runtime_ms");
  for (const auto& row : r.rows) {
    const bool sampled = row.method == Method::sample;
    std::vector<Cell> cells{r.kind, static_cast<std::int64_t>(r.genus.value()), r.spec, static_cast<std::uint64_t>(row.n),
               to_string(row.method), row.joint, optional_rational(row.exact_joint), row.product,
               optional_rational(row.exact_product), row.gap, r.prediction, to_decimal(r.prediction),
               row.error, row.n_error, sampled ? Cell(row.joint_stderr) : Cell(),
               sampled ? Cell(row.gap_stderr) : Cell(), row.samples, r.seed.value};
    if (timing) cells.push_back(row.runtime_ms);
    t.add_row(std::move(cells));
  }
  return t;
}

Table to_table(const CycleReport& r) {
  Table t;
  t.columns = {"stat", "g", "n", "method", "word_i", "d_i", "word_j", "d_j", "value", "exact",
               "prediction", "stderr", "samples", "seed"};
  for (const auto& m : r.means) {
    const bool sampled = m.method == Method::sample;
    t.add_row({std::string("mean"), static_cast<std::int64_t>(r.genus.value()), static_cast<std::uint64_t>(m.n),
               to_string(m.method), r.words[m.word], static_cast<std::uint64_t>(m.d), Cell(), Cell(), m.mean,
               optional_rational(m.exact_mean), m.prediction, sampled ? Cell(m.stderr_of_mean) : Cell(),
               sampled ? Cell(r.samples) : Cell(std::uint64_t{0}), r.seed.value});
  }
  for (const auto& c : r.covariances) {
    const bool sampled = c.method == Method::sample;
    t.add_row({std::string("covariance"), static_cast<std::int64_t>(r.genus.value()),
               static_cast<std::uint64_t>(c.n), to_string(c.method), r.words[c.word_i],
               static_cast<std::uint64_t>(c.d_i), r.words[c.word_j], static_cast<std::uint64_t>(c.d_j), c.covariance,
               optional_rational(c.exact_covariance), ExactRational(0), sampled ? Cell(c.stderr_of_cov) : Cell(),
               sampled ? Cell(r.samples) : Cell(std::uint64_t{0}), r.seed.value});
  }
  return t;
}

}  // namespace scl
