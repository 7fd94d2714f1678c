#include "hpcmodel/units.hpp"

#include <cstdio>

namespace hpcmodel::units {

namespace {

std::string format_mantissa(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

}  // namespace

std::string human_bytes(std::uint64_t bytes) {
  if (bytes < 1024) return std::to_string(bytes) + " B";

  static constexpr const char* kBinary[] = {"KiB", "MiB", "GiB", "TiB", "PiB", "EiB"};
  std::uint64_t prefix = kKiB;
  int index = 0;
  while (index + 1 < 6 && bytes / prefix >= 1024) {
    prefix *= 1024;
    ++index;
  }
  // Binary rendering only when the value sits exactly on the grid one prefix
  // below (so "1.5 TiB" qualifies but "3.8 TB" does not).
  const std::uint64_t grid = prefix / 1024;
  if (bytes % grid == 0) {
    return format_mantissa(static_cast<double>(bytes / grid) / 1024.0) + " " + kBinary[index];
  }

  static constexpr const char* kDecimal[] = {"kB", "MB", "GB", "TB", "PB", "EB"};
  double value = static_cast<double>(bytes);
  int dec = 0;
  while (dec + 1 < 6 && value >= 1000.0 * 1000.0) {
    value /= 1000.0;
    ++dec;
  }
  value /= 1000.0;
  return format_mantissa(value) + " " + kDecimal[dec];
}

}  // namespace hpcmodel::units
