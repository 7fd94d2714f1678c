#pragma once

#include <cstdint>
#include <string>

// Canonical units used throughout the library:
//   capacities      bytes (exact integers)
//   frequencies     GHz
//   bandwidths      GB/s, decimal (1 GB/s = 1e9 byte/s)
//   link rates      Gbit/s
//   power           watts
// Binary prefixes (KiB/MiB/GiB/TiB) appear only when rendering output.
namespace hpcmodel::units {

inline constexpr std::uint64_t kKiB = 1024ull;
inline constexpr std::uint64_t kMiB = 1024ull * kKiB;
inline constexpr std::uint64_t kGiB = 1024ull * kMiB;
inline constexpr std::uint64_t kTiB = 1024ull * kGiB;

inline constexpr std::uint64_t kKB = 1000ull;
inline constexpr std::uint64_t kMB = 1000ull * kKB;
inline constexpr std::uint64_t kGB = 1000ull * kMB;
inline constexpr std::uint64_t kTB = 1000ull * kGB;
inline constexpr std::uint64_t kPB = 1000ull * kTB;

// "768 GiB", "1.5 TiB", "3.84 TB": chooses the largest prefix that keeps the
// mantissa >= 1; binary when the value is an exact multiple of a binary
// prefix, decimal otherwise.
std::string human_bytes(std::uint64_t bytes);

}  // namespace hpcmodel::units
