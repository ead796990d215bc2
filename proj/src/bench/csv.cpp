#include "ustat/bench/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace ustat::bench {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(const std::string& token, double& value) {
  if (token.empty()) return false;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto result = std::from_chars(begin, end, value);
  return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

namespace {

DataMatrix parse_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  int width = -1;
  bool saw_content = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const std::vector<std::string> fields = split_csv_line(line);
    if (!saw_content) {
      saw_content = true;
      // Header auto-detection: a first content row with any non-numeric field.
      bool all_numeric = true;
      double scratch;
      for (const auto& f : fields)
        if (!parse_double(f, scratch)) {
          all_numeric = false;
          break;
        }
      if (!all_numeric) continue;
    }

    if (width < 0) width = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != width)
      throw DataError(path + ": ragged row at line " + std::to_string(lineno) + " (expected " +
                      std::to_string(width) + " fields, found " + std::to_string(fields.size()) +
                      ")");

    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double value;
      if (!parse_double(fields[c], value))
        throw DataError(path + ": cannot parse '" + fields[c] + "' at line " +
                        std::to_string(lineno) + ", column " + std::to_string(c + 1));
      if (!std::isfinite(value))
        throw DataError(path + ": non-finite value at line " + std::to_string(lineno) +
                        ", column " + std::to_string(c + 1));
      row[c] = value;
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw DataError(path + ": no data rows");

  DataMatrix data(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) data(r, c) = rows[r][c];
  return data;
}

}  // namespace

Sample ingest_csv(const std::string& path) {
  DataMatrix data = parse_csv_file(path);
  if (data.rows() < 2) throw DataError(path + ": need at least 2 data rows");
  return Sample(std::move(data));
}

DataMatrix read_csv_matrix(const std::string& path) { return parse_csv_file(path); }

void write_csv(const std::string& path, const DataMatrix& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  char buf[64];
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", data(r, c));
      out << buf;
      if (c + 1 < data.cols()) out << ',';
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace ustat::bench
