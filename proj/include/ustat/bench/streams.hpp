#pragma once

#include <cstdint>

namespace ustat::bench {

// Stream-id regions carve the 64-bit stream space so no two uses of a master
// seed can collide, whatever the replication count or thread schedule.
//
//   data sample of replication r         -> kDataStream + r
//   second data sample of replication r  -> kAuxDataStream + r
//   bridge path j inside replication r   -> kBridgeStream + r * kBridgeStride + j
//   W-limit path j (shared across reps)  -> kWStream + j
//   one-off simulations (tables)         -> kTableStream + j
inline constexpr std::uint64_t kDataStream = 0;
inline constexpr std::uint64_t kAuxDataStream = std::uint64_t{1} << 48;
inline constexpr std::uint64_t kBridgeStream = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kBridgeStride = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kWStream = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kTableStream = std::uint64_t{1} << 44;

}  // namespace ustat::bench
