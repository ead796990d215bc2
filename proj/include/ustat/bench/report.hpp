#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ustat/errors.hpp"

namespace ustat::bench {

using Json = nlohmann::ordered_json;

// JSON has no non-finite numbers; infinities and NaN become strings so that
// degenerate statistics survive serialization unambiguously.
Json json_number(double x);
Json json_number_list(const std::vector<double>& values);

void write_report(const Json& report, const std::string& path);
Json read_report(const std::string& path);

}  // namespace ustat::bench
