#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ustat/errors.hpp"

namespace ustat::bench {

// Flat key = value configuration. '#' starts a comment; blank lines are
// skipped. Every key a command reads is recorded together with its resolved
// value (including applied defaults) so reports can echo the effective
// configuration; keys nobody read are reported as errors.
class KVConfig {
 public:
  KVConfig() = default;

  static KVConfig from_file(const std::string& path);
  static KVConfig from_map(std::map<std::string, std::string> entries);

  void set(const std::string& key, const std::string& value);  // CLI overrides
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  int require_int(const std::string& key) const;
  // Consumed but excluded from the effective echo: execution knobs like
  // 'threads' must not make otherwise-identical reports differ.
  int get_int_silent(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

  // Throws ConfigError when the file carries keys no getter consumed.
  void reject_unknown_keys() const;

  const std::map<std::string, std::string>& effective() const { return effective_; }

 private:
  double parse_double(const std::string& key, const std::string& raw) const;
  int parse_int(const std::string& key, const std::string& raw) const;

  std::map<std::string, std::string> kv_;
  mutable std::map<std::string, std::string> effective_;
  mutable std::set<std::string> consumed_;
};

}  // namespace ustat::bench
