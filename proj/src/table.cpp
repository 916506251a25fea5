#include "csc/table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace csc {

void ResultTable::add_meta(const std::string& key, double value) {
  meta.emplace_back(key, format_full(value));
}

std::size_t ResultTable::rows() const {
  if (!labels.empty()) return labels.size();
  return columns.empty() ? 0 : columns.front().second.size();
}

void ResultTable::check_consistent() const {
  const std::size_t r = rows();
  if (!labels.empty() && labels.size() != r) {
    throw std::runtime_error("ResultTable: label column length mismatch");
  }
  for (const auto& [name, col] : columns) {
    if (col.size() != r) {
      throw std::runtime_error("ResultTable: column '" + name + "' length mismatch");
    }
  }
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv(const ResultTable& t) {
  t.check_consistent();
  std::string out;
  for (const auto& [k, v] : t.meta) {
    out += "# " + k + " = " + v + "\n";
  }
  bool first = true;
  if (!t.label_name.empty()) {
    out += t.label_name;
    first = false;
  }
  for (const auto& [name, col] : t.columns) {
    (void)col;
    if (!first) out += ",";
    out += name;
    first = false;
  }
  out += "\n";
  for (std::size_t i = 0; i < t.rows(); ++i) {
    first = true;
    if (!t.label_name.empty()) {
      out += t.labels[i];
      first = false;
    }
    for (const auto& [name, col] : t.columns) {
      (void)name;
      if (!first) out += ",";
      out += format_full(col[i]);
      first = false;
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const ResultTable& t) {
  t.check_consistent();
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["meta"] = meta;
  nlohmann::ordered_json cols = nlohmann::ordered_json::object();
  if (!t.label_name.empty()) cols[t.label_name] = t.labels;
  for (const auto& [name, col] : t.columns) cols[name] = col;
  j["columns"] = cols;
  return j.dump(2) + "\n";
}

void write_output(const ResultTable& t, OutputFormat format,
                  const std::string& path) {
  const std::string body = (format == OutputFormat::Csv) ? to_csv(t) : to_json(t);
  if (path.empty() || path == "-") {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write_output: stdout write failed");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_output: cannot open " + path);
  f << body;
  f.flush();
  if (!f) throw std::runtime_error("write_output: write failed for " + path);
}

}  // namespace csc
