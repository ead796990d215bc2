#include "ustat/bench/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ustat::bench {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> items;
  std::size_t start = 0;
  for (;;) {
    const auto comma = raw.find(',', start);
    if (comma == std::string::npos) {
      items.push_back(trim(raw.substr(start)));
      return items;
    }
    items.push_back(trim(raw.substr(start, comma - start)));
    start = comma + 1;
  }
}

}  // namespace

KVConfig KVConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  KVConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ": line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ": line " + std::to_string(lineno) + ": empty key");
    if (cfg.kv_.count(key))
      throw ConfigError(path + ": line " + std::to_string(lineno) + ": duplicate key '" + key +
                        "'");
    cfg.kv_[key] = value;
  }
  return cfg;
}

KVConfig KVConfig::from_map(std::map<std::string, std::string> entries) {
  KVConfig cfg;
  cfg.kv_ = std::move(entries);
  return cfg;
}

void KVConfig::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool KVConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string KVConfig::get_string(const std::string& key, const std::string& fallback) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  const std::string value = it == kv_.end() ? fallback : it->second;
  effective_[key] = value;
  return value;
}

std::string KVConfig::require_string(const std::string& key) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing required config key '" + key + "'");
  effective_[key] = it->second;
  return it->second;
}

double KVConfig::parse_double(const std::string& key, const std::string& raw) const {
  double value;
  const char* begin = raw.data();
  const char* end = begin + raw.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end)
    throw ConfigError("config key '" + key + "': cannot parse number '" + raw + "'");
  return value;
}

int KVConfig::parse_int(const std::string& key, const std::string& raw) const {
  int value;
  const char* begin = raw.data();
  const char* end = begin + raw.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end)
    throw ConfigError("config key '" + key + "': cannot parse integer '" + raw + "'");
  return value;
}

double KVConfig::get_double(const std::string& key, double fallback) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  if (it == kv_.end()) {
    std::ostringstream os;
    os << fallback;
    effective_[key] = os.str();
    return fallback;
  }
  effective_[key] = it->second;
  return parse_double(key, it->second);
}

double KVConfig::require_double(const std::string& key) const {
  return parse_double(key, require_string(key));
}

int KVConfig::get_int(const std::string& key, int fallback) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  if (it == kv_.end()) {
    effective_[key] = std::to_string(fallback);
    return fallback;
  }
  effective_[key] = it->second;
  return parse_int(key, it->second);
}

int KVConfig::require_int(const std::string& key) const {
  return parse_int(key, require_string(key));
}

int KVConfig::get_int_silent(const std::string& key, int fallback) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_int(key, it->second);
}

std::uint64_t KVConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  if (it == kv_.end()) {
    effective_[key] = std::to_string(fallback);
    return fallback;
  }
  effective_[key] = it->second;
  std::uint64_t value;
  const char* begin = it->second.data();
  const char* end = begin + it->second.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end)
    throw ConfigError("config key '" + key + "': cannot parse unsigned integer '" + it->second +
                      "'");
  return value;
}

std::vector<double> KVConfig::get_double_list(const std::string& key,
                                              const std::vector<double>& fallback) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  if (it == kv_.end()) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fallback.size(); ++i) os << (i ? "," : "") << fallback[i];
    effective_[key] = os.str();
    return fallback;
  }
  effective_[key] = it->second;
  std::vector<double> values;
  for (const auto& item : split_list(it->second)) values.push_back(parse_double(key, item));
  return values;
}

std::vector<int> KVConfig::get_int_list(const std::string& key,
                                        const std::vector<int>& fallback) const {
  consumed_.insert(key);
  const auto it = kv_.find(key);
  if (it == kv_.end()) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fallback.size(); ++i) os << (i ? "," : "") << fallback[i];
    effective_[key] = os.str();
    return fallback;
  }
  effective_[key] = it->second;
  std::vector<int> values;
  for (const auto& item : split_list(it->second)) values.push_back(parse_int(key, item));
  return values;
}

void KVConfig::reject_unknown_keys() const {
  for (const auto& [key, value] : kv_)
    if (!consumed_.count(key)) throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace ustat::bench
