#pragma once

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace csc {

/// Columnar result set: named real columns of equal length, an optional
/// leading label column, and ordered metadata recording every parameter
/// needed to reproduce the run.  Columns live in a deque so references
/// returned by add_column stay valid as further columns are added.
struct ResultTable {
  std::string label_name;               // empty when there is no label column
  std::vector<std::string> labels;
  std::deque<std::pair<std::string, std::vector<double>>> columns;
  std::vector<std::pair<std::string, std::string>> meta;

  void add_meta(const std::string& key, const std::string& value) {
    meta.emplace_back(key, value);
  }
  void add_meta(const std::string& key, double value);
  std::vector<double>& add_column(const std::string& name) {
    columns.emplace_back(name, std::vector<double>{});
    return columns.back().second;
  }
  std::size_t rows() const;
  void check_consistent() const;  // throws on ragged columns
};

/// Full-precision decimal with 17 significant digits.
std::string format_full(double x);

/// Comma-separated, '\n' line endings; metadata as leading '#' comments,
/// then one header row, then the data rows.
std::string to_csv(const ResultTable& t);

/// Single object { "meta": {...}, "columns": { name: [...] } }.
std::string to_json(const ResultTable& t);

enum class OutputFormat { Csv, Json };

/// Write to the path, or to stdout when path is empty or "-".
/// Throws std::runtime_error on I/O failure.
void write_output(const ResultTable& t, OutputFormat format,
                  const std::string& path);

}  // namespace csc
