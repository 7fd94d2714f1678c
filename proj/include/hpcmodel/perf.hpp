#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hpcmodel/model.hpp"

namespace hpcmodel::perf {

// Factors entering a node peak, echoed so the result is recomputable:
// tflops = sockets * cores_per_socket * frequency_ghz
//        * execution_units * elements_per_vector * operations_per_element / 1000.
struct PeakFlopsInputs {
  int sockets = 0;
  int cores_per_socket = 0;
  double frequency_ghz = 0.0;
  int execution_units = 0;
  int elements_per_vector = 0;
  int operations_per_element = 0;

  bool operator==(const PeakFlopsInputs&) const = default;
};

struct PeakFlopsResult {
  std::string variant_name;
  double tflops = 0.0;
  PeakFlopsInputs inputs;

  bool operator==(const PeakFlopsResult&) const = default;
};

// Theoretical node peak for one vector variant at the given core frequency.
// Throws std::invalid_argument for a nonpositive frequency.
PeakFlopsResult peak_flops(const CpuSpec& cpu, const VectorVariant& variant, double frequency_ghz);

struct EfficiencyResult {
  double measured = 0.0;
  double theoretical = 0.0;
  double fraction = 0.0;  // measured / theoretical
  double percent = 0.0;

  bool operator==(const EfficiencyResult&) const = default;
};

// Measured TFLOP/s against the variant peak at the frequency the benchmark
// actually sustained. Throws std::invalid_argument if the peak is nonpositive.
EfficiencyResult flops_efficiency(double measured_tflops, const CpuSpec& cpu,
                                  const VectorVariant& variant, double observed_frequency_ghz);

// Node peak DRAM bandwidth in GB/s:
// sockets * channels_per_socket * transfer_rate * bytes_per_transfer.
double peak_memory_bandwidth(const MemoryConfig& memory, int sockets);

// Throws std::invalid_argument if theoretical is nonpositive.
EfficiencyResult bandwidth_efficiency(double measured_gb_s, double theoretical_gb_s);

struct HbmBandwidthResult {
  std::uint64_t bits_per_transaction = 0;
  std::uint64_t bytes_per_transaction = 0;
  double mb_s = 0.0;
  double gb_s = 0.0;
};

// Peak bandwidth from the controller layout:
// bits  = stacks * channels * pseudo_channels * bits_per_pseudo_channel,
// MB/s  = clock_mhz * data_rate_multiplier * bytes_per_transaction.
HbmBandwidthResult hbm_peak_bandwidth(const HbmConfig& hbm);

// Inverse of hbm_peak_bandwidth: controller clock in MHz that yields the
// target bandwidth. Throws std::invalid_argument for nonpositive targets.
double hbm_clock_for_bandwidth(const HbmConfig& hbm, double target_gb_s);

// Single-DIMM (or n-channel) DDR bandwidth in GB/s from MT/s and bus width.
double ddr_bandwidth(double transfer_rate_mt_s, int bytes_per_transfer, int channels = 1);

struct XbtestModeResult {
  int mode = 0;           // 1-based test-mode index
  std::string label;      // "only write", ...
  double fraction = 0.0;  // sustained / peak
  double implied_gb_s = 0.0;

  bool operator==(const XbtestModeResult&) const = default;
};

// Implied sustained bandwidths for the four canonical memory test modes.
// Throws std::invalid_argument for a nonpositive peak.
std::vector<XbtestModeResult> xbtest_modes(double peak_gb_s,
                                           const std::array<double, 4>& mode_fractions);

// Cycles <-> nanoseconds at a core frequency. Throw std::invalid_argument
// for nonpositive frequencies.
double cache_latency_ns(double cycles, double frequency_ghz);
double cache_latency_cycles(double ns, double frequency_ghz);

// Aggregate accelerator peak for one node: count * per-device TFLOP/s at the
// given precision label. Throws std::invalid_argument if the label is absent.
double accelerator_node_peak(const AcceleratorSpec& accelerator, int count,
                             const std::string& precision);

// GFLOP/s per watt at the given precision label.
// Throws std::invalid_argument if the label is absent or TDP is nonpositive.
double perf_per_watt(const AcceleratorSpec& accelerator, const std::string& precision);

struct SpeedupResult {
  double baseline = 0.0;
  double candidate = 0.0;
  double factor = 0.0;  // > 1 means the candidate improves on the baseline
  Orientation orientation = Orientation::higher_is_better;

  bool operator==(const SpeedupResult&) const = default;
};

// Improvement factor of candidate over baseline; for lower-is-better metrics
// the ratio is inverted so > 1 always means better. Throws
// std::invalid_argument for nonpositive inputs.
SpeedupResult speedup(double baseline, double candidate, Orientation orientation);

struct ResourceRatio {
  std::string resource;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;

  bool operator==(const ResourceRatio&) const = default;
};

// Ratios a/b for LUTs (plain and packed when available), DSP blocks, and
// total RAM capacity. Throws std::invalid_argument on zero denominators.
std::vector<ResourceRatio> fpga_resource_ratios(const FpgaResources& a, const FpgaResources& b);

struct BspAvailability {
  std::string resource;  // "logic", "dsp", "bram"
  std::uint64_t total = 0;
  double overhead_fraction = 0.0;
  bool upper_bound = false;
  // Guaranteed-available count; for "< x" overheads the true value lies in
  // [available_min, available_max].
  std::uint64_t available_min = 0;
  std::uint64_t available_max = 0;

  bool operator==(const BspAvailability&) const = default;
};

// User-available resources after shell overhead, floor-rounded to whole
// units. BRAM counts refer to the first ram_blocks group (the primary
// block-RAM array). Entries appear only for overheads the record documents.
std::vector<BspAvailability> bsp_available(const FpgaResources& resources);

}  // namespace hpcmodel::perf
