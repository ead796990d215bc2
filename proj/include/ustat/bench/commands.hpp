#pragma once

#include <string>
#include <vector>

#include "ustat/bench/config.hpp"
#include "ustat/bench/report.hpp"
#include "ustat/types.hpp"

namespace ustat::bench {

inline constexpr int kReportSchemaVersion = 1;

struct CommandResult {
  Json report;
  std::string summary;
  std::string out_path;
};

const std::vector<std::string>& command_names();

// Runs one subcommand end to end: validates the config, computes, writes the
// report to the configured output path and returns it together with a short
// deterministic summary for stdout.
CommandResult run_command(const std::string& command, const KVConfig& cfg);

// Degenerate-kernel harness statistic max_{2<=k<=n} |M_k|_2 / (k-1) with
// M_k = sum_{i<j<=k} (X_i - mu) o (X_j - mu), the coordinatewise product of
// centered observations.
double lemma1_max_stat(const Sample& sample, const std::vector<double>& mu);

}  // namespace ustat::bench
