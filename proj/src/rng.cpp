#include "ustat/rng.hpp"

#include <cmath>
#include <cstdlib>

namespace ustat {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

// Marsaglia-Tsang ziggurat tables, 128 layers, 32-bit inner integers.
struct ZigTables {
  std::uint32_t kn[128];
  double wn[128];
  double fn[128];

  ZigTables() {
    const double m1 = 2147483648.0;
    double dn = 3.442619855899;
    double tn = dn;
    const double vn = 9.91256303526217e-3;
    const double q = vn / std::exp(-0.5 * dn * dn);
    kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
    kn[1] = 0;
    wn[0] = q / m1;
    wn[127] = dn / m1;
    fn[0] = 1.0;
    fn[127] = std::exp(-0.5 * dn * dn);
    for (int i = 126; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
      kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
      tn = dn;
      fn[i] = std::exp(-0.5 * dn * dn);
      wn[i] = dn / m1;
    }
  }
};

const ZigTables& zig() {
  static const ZigTables tables;
  return tables;
}

constexpr double kZigTailStart = 3.442619855899;

}  // namespace

RngStream::RngStream(const RngSpec& spec) {
  // One splitmix round over the master seed, then the stream id folded in
  // through the same mixer: nearby stream ids land on unrelated states.
  std::uint64_t st = spec.master_seed;
  (void)splitmix64(st);
  st ^= 0xD1B54A32D192ED03ULL * (spec.stream_id + 1);
  for (auto& word : s_) word = splitmix64(st);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro forbids all-zero state
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_pos() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
  const ZigTables& t = zig();
  for (;;) {
    const std::uint64_t r = next_u64();
    // Layer index and inner integer come from disjoint bits of one draw.
    const auto hz = static_cast<std::int32_t>(static_cast<std::uint32_t>(r >> 32));
    const auto iz = static_cast<std::uint32_t>(r & 127u);
    const std::uint32_t mag =
        hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
               : static_cast<std::uint32_t>(hz);
    if (mag < t.kn[iz]) return hz * t.wn[iz];

    if (iz == 0) {
      // Tail beyond the base layer.
      double x;
      double y;
      do {
        x = -std::log(uniform_pos()) / kZigTailStart;
        y = -std::log(uniform_pos());
      } while (y + y < x * x);
      return hz > 0 ? kZigTailStart + x : -(kZigTailStart + x);
    }
    const double x = hz * t.wn[iz];
    if (t.fn[iz] + uniform() * (t.fn[iz - 1] - t.fn[iz]) < std::exp(-0.5 * x * x)) return x;
    // Wedge rejected: restart with fresh bits.
  }
}

double RngStream::cauchy(double location, double scale) {
  const double u = uniform();
  return location + scale * std::tan(3.14159265358979323846 * (u - 0.5));
}

double RngStream::laplace(double location, double scale) {
  double v;
  do {
    v = uniform() - 0.5;
  } while (v == -0.5);
  const double mag = std::log1p(-2.0 * std::fabs(v));
  return v < 0 ? location + scale * mag : location - scale * mag;
}

}  // namespace ustat
