#include "ustat/bench/report.hpp"

#include <cmath>
#include <fstream>

namespace ustat::bench {

Json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json json_number_list(const std::vector<double>& values) {
  Json list = Json::array();
  for (double v : values) list.push_back(json_number(v));
  return list;
}

void write_report(const Json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open report output file: " + path);
  out << report.dump(2) << '\n';
  if (!out) throw DataError("report write failed: " + path);
}

Json read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open report file: " + path);
  Json report;
  in >> report;
  return report;
}

}  // namespace ustat::bench
