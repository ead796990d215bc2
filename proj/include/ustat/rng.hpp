#pragma once

#include <cstdint>

namespace ustat {

// Names one reproducible random stream. Equal (master_seed, stream_id) pairs
// always reproduce the same draws, on any platform and under any thread
// schedule; distinct stream_ids give statistically independent streams.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  RngSpec with_stream(std::uint64_t id) const { return RngSpec{master_seed, id}; }
};

// xoshiro256++ stream seeded from (master_seed, stream_id) through splitmix64,
// with ziggurat normals. The whole generator stack is fixed per release; see
// README for the exact derivation.
class RngStream {
 public:
  explicit RngStream(const RngSpec& spec);

  std::uint64_t next_u64();

  double uniform();      // [0, 1), 53-bit resolution
  double uniform_pos();  // (0, 1]
  double normal();       // standard normal, Marsaglia-Tsang ziggurat
  double normal(double mean, double sd) { return mean + sd * normal(); }
  double cauchy(double location, double scale);
  double laplace(double location, double scale);

 private:
  std::uint64_t s_[4];
};

}  // namespace ustat
