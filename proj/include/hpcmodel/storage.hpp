#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hpcmodel/model.hpp"
#include "hpcmodel/perf.hpp"

namespace hpcmodel::storage {

// device_count * device_capacity_bytes, exact.
std::uint64_t pool_raw_capacity(const Pool& pool);

struct PoolCapacity {
  std::string name;
  std::uint64_t raw_bytes = 0;

  bool operator==(const PoolCapacity&) const = default;
};

struct CapacitySummary {
  std::uint64_t raw_bytes = 0;
  std::uint64_t usable_bytes = 0;
  double usable_fraction = 0.0;  // usable / raw
  std::vector<PoolCapacity> pools;

  bool operator==(const CapacitySummary&) const = default;
};

CapacitySummary capacity_summary(const StorageSpec& storage);

// ---------------------------------------------------------------------------
// Benchmark result lists ("name value unit" per line)
// ---------------------------------------------------------------------------

enum class BenchUnit { gb_s, kiops };

struct BenchMetric {
  std::string name;
  double value = 0.0;
  BenchUnit unit = BenchUnit::gb_s;

  bool operator==(const BenchMetric&) const = default;
};

struct BenchReport {
  std::string label;
  std::vector<BenchMetric> metrics;

  const BenchMetric* find(std::string_view name) const;

  bool operator==(const BenchReport&) const = default;
};

// Line format: `name value unit` with the last two whitespace-separated
// tokens being the value and the unit (names may contain spaces). Values
// accept both decimal separators ("179.2" and "179,2"). `#` starts a
// comment; a `# label: ...` comment names the run. Units are GB/s and
// kIOPS. Throws ParseError naming the offending line.
BenchReport parse_bench(std::string_view text, std::string default_label = {});
BenchReport load_bench(const std::filesystem::path& path);

// Canonical rendering; parse_bench(format_bench(r)) == r.
std::string format_bench(const BenchReport& report);

const char* to_string(BenchUnit unit);

struct BenchComparison {
  // Metric name -> improvement of b over a (higher is better for both units).
  std::vector<std::pair<std::string, perf::SpeedupResult>> matched;
  std::vector<std::string> only_in_a;
  std::vector<std::string> only_in_b;
};

// Pairs metrics by exact name; unit mismatches on a shared name throw
// std::invalid_argument.
BenchComparison compare_bench(const BenchReport& a, const BenchReport& b);

}  // namespace hpcmodel::storage
