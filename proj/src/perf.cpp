#include "hpcmodel/perf.hpp"

#include <cmath>
#include <stdexcept>

namespace hpcmodel::perf {

namespace {

constexpr const char* kXbtestModeLabels[4] = {
    "only write",
    "only read",
    "alternate write and read",
    "simultaneous write and read",
};

}  // namespace

PeakFlopsResult peak_flops(const CpuSpec& cpu, const VectorVariant& variant,
                           double frequency_ghz) {
  if (frequency_ghz <= 0.0) {
    throw std::invalid_argument("peak_flops: frequency must be positive, got " +
                                std::to_string(frequency_ghz));
  }
  if (variant.execution_units < 1 || variant.elements_per_vector < 1 ||
      variant.operations_per_element < 1) {
    throw std::invalid_argument("peak_flops: variant factors must be at least 1");
  }
  PeakFlopsResult result;
  result.variant_name = variant.name;
  result.inputs = {cpu.sockets_per_node,      cpu.cores_per_socket,
                   frequency_ghz,             variant.execution_units,
                   variant.elements_per_vector, variant.operations_per_element};
  // Keep the integer factors together so exact decimal frequencies land on
  // exact decimal peaks (GFLOP per cycle per node is an integer).
  const double flop_per_cycle =
      static_cast<double>(cpu.sockets_per_node) * cpu.cores_per_socket *
      variant.execution_units * variant.elements_per_vector * variant.operations_per_element;
  result.tflops = flop_per_cycle * frequency_ghz / 1000.0;
  return result;
}

EfficiencyResult flops_efficiency(double measured_tflops, const CpuSpec& cpu,
                                  const VectorVariant& variant, double observed_frequency_ghz) {
  const double theoretical = peak_flops(cpu, variant, observed_frequency_ghz).tflops;
  return bandwidth_efficiency(measured_tflops, theoretical);
}

double peak_memory_bandwidth(const MemoryConfig& memory, int sockets) {
  if (sockets < 1) throw std::invalid_argument("peak_memory_bandwidth: sockets must be >= 1");
  if (memory.transfer_rate_gt_s <= 0.0) {
    throw std::invalid_argument("peak_memory_bandwidth: transfer rate must be positive");
  }
  // Work in MT/s so common decimal rates (6.4 GT/s, 3.2 GT/s) stay exact.
  const double mt_s = memory.transfer_rate_gt_s * 1000.0;
  const double channels = static_cast<double>(sockets) * memory.channels_per_socket;
  const double mb_s = channels * mt_s * memory.bytes_per_transfer;
  return mb_s / 1000.0;
}

EfficiencyResult bandwidth_efficiency(double measured, double theoretical) {
  if (theoretical <= 0.0) {
    throw std::invalid_argument("efficiency: theoretical value must be positive");
  }
  EfficiencyResult r;
  r.measured = measured;
  r.theoretical = theoretical;
  r.fraction = measured / theoretical;
  r.percent = r.fraction * 100.0;
  return r;
}

HbmBandwidthResult hbm_peak_bandwidth(const HbmConfig& hbm) {
  if (hbm.controller_clock_mhz <= 0.0) {
    throw std::invalid_argument("hbm_peak_bandwidth: controller clock must be positive");
  }
  HbmBandwidthResult r;
  r.bits_per_transaction = static_cast<std::uint64_t>(hbm.stacks) * hbm.channels_per_stack *
                           hbm.pseudo_channels_per_channel * hbm.bits_per_pseudo_channel;
  r.bytes_per_transaction = r.bits_per_transaction / 8;
  r.mb_s = hbm.controller_clock_mhz * hbm.data_rate_multiplier *
           static_cast<double>(r.bytes_per_transaction);
  r.gb_s = r.mb_s / 1000.0;
  return r;
}

double hbm_clock_for_bandwidth(const HbmConfig& hbm, double target_gb_s) {
  if (target_gb_s <= 0.0) {
    throw std::invalid_argument("hbm_clock_for_bandwidth: target must be positive");
  }
  HbmConfig unit = hbm;
  unit.controller_clock_mhz = 1.0;
  const double mb_per_mhz = hbm_peak_bandwidth(unit).mb_s;
  if (mb_per_mhz <= 0.0) {
    throw std::invalid_argument("hbm_clock_for_bandwidth: degenerate transaction width");
  }
  return target_gb_s * 1000.0 / mb_per_mhz;
}

double ddr_bandwidth(double transfer_rate_mt_s, int bytes_per_transfer, int channels) {
  if (transfer_rate_mt_s <= 0.0 || bytes_per_transfer < 1 || channels < 1) {
    throw std::invalid_argument("ddr_bandwidth: all factors must be positive");
  }
  const double mb_s =
      transfer_rate_mt_s * static_cast<double>(bytes_per_transfer) * channels;
  return mb_s / 1000.0;
}

std::vector<XbtestModeResult> xbtest_modes(double peak_gb_s,
                                           const std::array<double, 4>& mode_fractions) {
  if (peak_gb_s <= 0.0) throw std::invalid_argument("xbtest_modes: peak must be positive");
  std::vector<XbtestModeResult> out;
  out.reserve(mode_fractions.size());
  for (std::size_t i = 0; i < mode_fractions.size(); ++i) {
    XbtestModeResult r;
    r.mode = static_cast<int>(i) + 1;
    r.label = kXbtestModeLabels[i];
    r.fraction = mode_fractions[i];
    r.implied_gb_s = peak_gb_s * mode_fractions[i];
    out.push_back(std::move(r));
  }
  return out;
}

double cache_latency_ns(double cycles, double frequency_ghz) {
  if (frequency_ghz <= 0.0) {
    throw std::invalid_argument("cache_latency_ns: frequency must be positive");
  }
  return cycles / frequency_ghz;
}

double cache_latency_cycles(double ns, double frequency_ghz) {
  if (frequency_ghz <= 0.0) {
    throw std::invalid_argument("cache_latency_cycles: frequency must be positive");
  }
  return ns * frequency_ghz;
}

double accelerator_node_peak(const AcceleratorSpec& accelerator, int count,
                             const std::string& precision) {
  if (count < 1) throw std::invalid_argument("accelerator_node_peak: count must be >= 1");
  const auto it = accelerator.throughput_table.find(precision);
  if (it == accelerator.throughput_table.end()) {
    throw std::invalid_argument("accelerator_node_peak: " + accelerator.model +
                                " has no throughput entry for precision '" + precision + "'");
  }
  return static_cast<double>(count) * it->second;
}

double perf_per_watt(const AcceleratorSpec& accelerator, const std::string& precision) {
  const auto it = accelerator.throughput_table.find(precision);
  if (it == accelerator.throughput_table.end()) {
    throw std::invalid_argument("perf_per_watt: " + accelerator.model +
                                " has no throughput entry for precision '" + precision + "'");
  }
  if (accelerator.tdp_watts <= 0.0) {
    throw std::invalid_argument("perf_per_watt: TDP must be positive");
  }
  return it->second * 1000.0 / accelerator.tdp_watts;  // GFLOP/s per W
}

SpeedupResult speedup(double baseline, double candidate, Orientation orientation) {
  if (baseline <= 0.0 || candidate <= 0.0) {
    throw std::invalid_argument("speedup: values must be positive");
  }
  SpeedupResult r;
  r.baseline = baseline;
  r.candidate = candidate;
  r.orientation = orientation;
  r.factor = orientation == Orientation::higher_is_better ? candidate / baseline
                                                          : baseline / candidate;
  return r;
}

std::vector<ResourceRatio> fpga_resource_ratios(const FpgaResources& a, const FpgaResources& b) {
  auto ratio_of = [](const std::string& name, double num, double den) {
    if (den <= 0.0) {
      throw std::invalid_argument("fpga_resource_ratios: zero denominator for " + name);
    }
    return ResourceRatio{name, num, den, num / den};
  };
  std::vector<ResourceRatio> out;
  out.push_back(ratio_of("luts", static_cast<double>(a.luts), static_cast<double>(b.luts)));
  if (b.luts_packed) {
    out.push_back(ratio_of("luts_vs_packed", static_cast<double>(a.luts),
                           static_cast<double>(*b.luts_packed)));
  }
  out.push_back(ratio_of("dsp_blocks", static_cast<double>(a.dsp_blocks.count),
                         static_cast<double>(b.dsp_blocks.count)));
  out.push_back(ratio_of("ram_kibit", static_cast<double>(a.total_ram_kibit()),
                         static_cast<double>(b.total_ram_kibit())));
  return out;
}

std::vector<BspAvailability> bsp_available(const FpgaResources& resources) {
  std::vector<BspAvailability> out;
  if (!resources.bsp_overhead) return out;

  auto add = [&out](const char* name, std::uint64_t total,
                    const std::optional<BspFraction>& overhead) {
    if (!overhead) return;
    BspAvailability a;
    a.resource = name;
    a.total = total;
    a.overhead_fraction = overhead->fraction;
    a.upper_bound = overhead->upper_bound;
    const auto floor_after = [total](double fraction) {
      return static_cast<std::uint64_t>(
          std::floor(static_cast<double>(total) * (1.0 - fraction)));
    };
    a.available_min = floor_after(overhead->fraction);
    // "< x" overheads only bound the loss; anything up to the full count may
    // remain available.
    a.available_max = overhead->upper_bound ? total : a.available_min;
    out.push_back(std::move(a));
  };

  add("logic", resources.luts, resources.bsp_overhead->logic);
  add("dsp", resources.dsp_blocks.count, resources.bsp_overhead->dsp);
  const std::uint64_t bram_total =
      resources.ram_blocks.empty() ? 0 : resources.ram_blocks.front().count;
  add("bram", bram_total, resources.bsp_overhead->bram);
  return out;
}

}  // namespace hpcmodel::perf
