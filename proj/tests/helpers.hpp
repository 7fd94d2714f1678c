#pragma once

// Shared fixtures for the test binaries: bundled-file paths, cached cluster
// loads, deterministic RNG helpers, and a generator of random *valid*
// cluster descriptions for round-trip and invariance properties.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef HPCMODEL_CLI_PATH
#include <sys/wait.h>
#endif

#include "hpcmodel/json_io.hpp"
#include "hpcmodel/model.hpp"

namespace testutil {

using Rng = std::mt19937;

inline std::string data_path(const std::string& name) {
  return std::string(HPCMODEL_DATA_DIR) + "/" + name;
}

inline std::string test_data_path(const std::string& name) {
  return std::string(HPCMODEL_TEST_DATA_DIR) + "/" + name;
}

inline const hpcmodel::ClusterSpec& otus() {
  static const hpcmodel::ClusterSpec cluster = hpcmodel::load_cluster(data_path("otus.cluster"));
  return cluster;
}

inline const hpcmodel::ClusterSpec& noctua2() {
  static const hpcmodel::ClusterSpec cluster =
      hpcmodel::load_cluster(data_path("noctua2.cluster"));
  return cluster;
}

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double rand_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool rand_bool(Rng& rng) { return rand_int(rng, 0, 1) == 1; }

inline std::string rand_name(Rng& rng, const std::string& prefix) {
  return prefix + "-" + std::to_string(rand_int(rng, 0, 999999));
}

// ---------------------------------------------------------------------------
// Random valid model fragments
// ---------------------------------------------------------------------------

inline hpcmodel::VectorVariant rand_variant(Rng& rng, int index) {
  hpcmodel::VectorVariant variant;
  variant.name = "variant-" + std::to_string(index);
  variant.execution_units = rand_int(rng, 1, 4);
  variant.elements_per_vector = 1 << rand_int(rng, 0, 3);
  variant.operations_per_element = rand_int(rng, 1, 3);
  return variant;
}

inline hpcmodel::CpuSpec rand_cpu(Rng& rng) {
  hpcmodel::CpuSpec cpu;
  cpu.model = rand_name(rng, "cpu");
  cpu.sockets_per_node = rand_int(rng, 1, 2);
  cpu.cores_per_socket = rand_int(rng, 4, 128);
  cpu.base_frequency_ghz = rand_real(rng, 1.0, 3.0);
  cpu.boost_frequency_ghz = cpu.base_frequency_ghz + rand_real(rng, 0.0, 1.5);
  cpu.tdp_watts_per_socket = rand_real(rng, 100.0, 500.0);
  const int cache_levels = rand_int(rng, 0, 3);
  for (int i = 0; i < cache_levels; ++i) {
    hpcmodel::CacheLevel cache;
    cache.level = "L" + std::to_string(i + 1);
    cache.size_bytes = static_cast<std::uint64_t>(32768) << (4 * i);
    cache.sharing_cores = rand_int(rng, 1, 8);
    if (rand_bool(rng)) cache.associativity = rand_int(rng, 1, 16);
    if (rand_bool(rng)) {
      const double low = rand_real(rng, 1.0, 20.0);
      cache.latency_cycles_measured = hpcmodel::Range{low, low + rand_real(rng, 0.0, 30.0)};
    }
    cpu.caches.push_back(cache);
  }
  const int variants = rand_int(rng, 1, 3);
  for (int i = 0; i < variants; ++i) cpu.vector_variants.push_back(rand_variant(rng, i));
  return cpu;
}

inline hpcmodel::MemoryConfig rand_memory(Rng& rng) {
  hpcmodel::MemoryConfig memory;
  memory.technology = rand_name(rng, "ddr");
  memory.capacity_bytes = static_cast<std::uint64_t>(rand_int(rng, 1, 1536)) * (1ull << 30);
  memory.channels_per_socket = rand_int(rng, 1, 16);
  memory.transfer_rate_gt_s = rand_real(rng, 1.0, 8.0);
  memory.bytes_per_transfer = rand_bool(rng) ? 8 : 4;
  if (rand_bool(rng)) memory.numa_mode = "NPS" + std::to_string(1 << rand_int(rng, 0, 2));
  return memory;
}

inline hpcmodel::AcceleratorSpec rand_gpu(Rng& rng) {
  hpcmodel::AcceleratorSpec spec;
  spec.kind = hpcmodel::AcceleratorKind::gpu;
  spec.model = rand_name(rng, "gpu");
  spec.tdp_watts = rand_real(rng, 100.0, 800.0);
  hpcmodel::MemorySystem memory;
  memory.label = "HBM";
  memory.capacity_bytes = static_cast<std::uint64_t>(rand_int(rng, 16, 96)) * (1ull << 30);
  memory.peak_bandwidth_gb_s = rand_real(rng, 500.0, 3000.0);
  if (rand_bool(rng)) {
    hpcmodel::HbmConfig hbm;
    hbm.stacks = rand_int(rng, 1, 6);
    hbm.channels_per_stack = 8;
    hbm.pseudo_channels_per_channel = 2;
    hbm.bits_per_pseudo_channel = 64;
    hbm.controller_clock_mhz = rand_real(rng, 500.0, 2000.0);
    hbm.data_rate_multiplier = 2;
    memory.hbm = hbm;
  }
  spec.memory_systems.push_back(memory);
  spec.throughput_table["fp64"] = rand_real(rng, 5.0, 100.0);
  if (rand_bool(rng)) spec.throughput_table["fp32"] = rand_real(rng, 10.0, 200.0);
  return spec;
}

inline hpcmodel::AcceleratorSpec rand_fpga(Rng& rng) {
  hpcmodel::AcceleratorSpec spec;
  spec.kind = hpcmodel::AcceleratorKind::fpga;
  spec.model = rand_name(rng, "fpga");
  spec.tdp_watts = rand_real(rng, 50.0, 300.0);
  hpcmodel::MemorySystem memory;
  memory.label = "DDR4";
  memory.capacity_bytes = static_cast<std::uint64_t>(rand_int(rng, 8, 64)) * 1000000000ull;
  memory.peak_bandwidth_gb_s = rand_real(rng, 10.0, 100.0);
  spec.memory_systems.push_back(memory);
  hpcmodel::FpgaResources resources;
  resources.luts = static_cast<std::uint64_t>(rand_int(rng, 100000, 3000000));
  if (rand_bool(rng)) resources.luts_packed = resources.luts * 2;
  resources.dsp_blocks = {static_cast<std::uint64_t>(rand_int(rng, 1000, 15000)), "DSP"};
  const int groups = rand_int(rng, 1, 2);
  for (int i = 0; i < groups; ++i) {
    resources.ram_blocks.push_back({rand_name(rng, "ram"),
                                    static_cast<std::uint64_t>(rand_int(rng, 100, 5000)),
                                    static_cast<std::uint64_t>(rand_int(rng, 18, 288))});
  }
  if (rand_bool(rng)) {
    hpcmodel::BspOverhead overhead;
    overhead.logic = hpcmodel::BspFraction{rand_real(rng, 0.0, 0.5), rand_bool(rng)};
    if (rand_bool(rng)) overhead.dsp = hpcmodel::BspFraction{rand_real(rng, 0.0, 0.5), false};
    resources.bsp_overhead = overhead;
  }
  spec.fpga_resources = resources;
  if (rand_bool(rng)) spec.host_interface = hpcmodel::HostInterface{"PCIe", rand_real(rng, 5.0, 64.0)};
  if (rand_bool(rng)) spec.network_ports = hpcmodel::NetworkPorts{rand_int(rng, 1, 4), 100.0};
  return spec;
}

// Link-rate labels are fixed so every use of a label carries the same rate,
// which the validator requires cluster-wide.
inline hpcmodel::LinkRate rand_link_rate(Rng& rng) {
  static const hpcmodel::LinkRate kRates[] = {{"R100", 100.0}, {"R200", 200.0}, {"R400", 400.0}};
  return kRates[rand_int(rng, 0, 2)];
}

inline hpcmodel::Partition rand_partition(Rng& rng, int index) {
  hpcmodel::Partition partition;
  partition.name = "part-" + std::to_string(index);
  partition.nodes_per_blade = rand_int(rng, 1, 2);
  partition.node_count =
      static_cast<std::uint64_t>(partition.nodes_per_blade) * rand_int(rng, 1, 400);
  if (rand_bool(rng)) {
    partition.active_nodes = static_cast<std::uint64_t>(
        rand_int(rng, 1, static_cast<int>(partition.node_count)));
  }
  partition.cpu = rand_cpu(rng);
  partition.memory = rand_memory(rng);
  if (rand_bool(rng)) {
    hpcmodel::AcceleratorGroup group;
    group.per_node = rand_int(rng, 1, 8);
    group.spec = rand_bool(rng) ? rand_gpu(rng) : rand_fpga(rng);
    partition.accelerators.push_back(group);
  }
  if (rand_bool(rng)) {
    partition.local_storage_bytes = static_cast<std::uint64_t>(rand_int(rng, 1, 8)) * 1000000000000ull;
  }
  if (rand_bool(rng)) {
    hpcmodel::PartitionLink link;
    link.rate = rand_link_rate(rng);
    link.links_per_blade = rand_int(rng, 1, 2);
    link.shared_io = partition.nodes_per_blade == 2 && rand_bool(rng);
    partition.link = link;
  }
  if (rand_bool(rng)) partition.note = rand_name(rng, "note");
  return partition;
}

inline hpcmodel::FabricSpec rand_fabric(Rng& rng, const std::vector<hpcmodel::Partition>& parts) {
  hpcmodel::FabricSpec fabric;
  fabric.spine_count = rand_int(rng, 1, 4);
  fabric.leaf_count = rand_int(rng, 2, 8);
  fabric.switch_radix = 64;
  fabric.port_rate = {"R800", 800.0};
  fabric.uplinks_per_leaf_per_spine = rand_int(rng, 1, 2);
  for (const auto& partition : parts) {
    hpcmodel::FabricAttachment attachment;
    attachment.partition = partition.name;
    attachment.blades = partition.blade_count();
    attachment.links_per_blade = partition.link ? partition.link->links_per_blade : 1;
    attachment.rate = partition.link ? partition.link->rate : hpcmodel::LinkRate{"R400", 400.0};
    attachment.shared_io = partition.link && partition.link->shared_io;
    fabric.endpoint_attachments.push_back(attachment);
  }
  const int aux = rand_int(rng, 0, 2);
  for (int i = 0; i < aux; ++i) {
    fabric.auxiliary_attachments.push_back(
        {"aux-" + std::to_string(i), rand_int(rng, 1, 4), {"R100", 100.0}});
  }
  return fabric;
}

inline hpcmodel::StorageSpec rand_storage(Rng& rng) {
  hpcmodel::StorageSpec storage;
  storage.filesystem_label = rand_name(rng, "fs");
  const int pools = rand_int(rng, 1, 3);
  std::uint64_t raw = 0;
  for (int i = 0; i < pools; ++i) {
    hpcmodel::Pool pool;
    pool.name = "pool-" + std::to_string(i);
    pool.device_count = static_cast<std::uint64_t>(rand_int(rng, 1, 100));
    pool.device_capacity_bytes = static_cast<std::uint64_t>(rand_int(rng, 1, 32)) * 1000000000000ull;
    pool.medium = rand_bool(rng) ? hpcmodel::Medium::nvme : hpcmodel::Medium::hdd;
    raw += pool.device_count * pool.device_capacity_bytes;
    storage.pools.push_back(pool);
  }
  storage.usable_capacity_bytes = raw / 2 + 1;
  const int servers = rand_int(rng, 0, 2);
  for (int i = 0; i < servers; ++i) {
    storage.servers.push_back({"server-" + std::to_string(i), rand_int(rng, 1, 4)});
  }
  return storage;
}

inline hpcmodel::MeasurementSet rand_measurements(Rng& rng, const hpcmodel::Partition& target) {
  hpcmodel::MeasurementSet set;
  set.partition = target.name;
  for (const auto& variant : target.cpu.vector_variants) {
    if (!rand_bool(rng)) continue;
    set.flops_runs.push_back(
        {variant.name, rand_real(rng, 1.0, 4.0), rand_real(rng, 1.0, 30.0), "bench"});
  }
  if (rand_bool(rng)) {
    set.stream_runs.push_back({"NPS4", rand_real(rng, 100.0, 1000.0), "stream"});
  }
  const int apps = rand_int(rng, 0, 3);
  for (int i = 0; i < apps; ++i) {
    set.applications.push_back({"app-" + std::to_string(i), rand_real(rng, 1.0, 10000.0),
                                rand_bool(rng) ? "GFLOP/s" : "s",
                                rand_bool(rng) ? hpcmodel::Orientation::higher_is_better
                                               : hpcmodel::Orientation::lower_is_better,
                                "run"});
  }
  const int scalars = rand_int(rng, 0, 2);
  for (int i = 0; i < scalars; ++i) {
    set.scalars.push_back(
        {"metric-" + std::to_string(i), rand_real(rng, 0.1, 100.0), "GB/s", "bench"});
  }
  if (rand_bool(rng)) {
    const double it = rand_real(rng, 100.0, 10000.0);
    set.pue_sample = hpcmodel::EnergySample{it * rand_real(rng, 1.0, 2.0), it, "period"};
  }
  return set;
}

// A random cluster description that satisfies every semantic invariant.
inline hpcmodel::ClusterSpec rand_cluster(Rng& rng) {
  hpcmodel::ClusterSpec cluster;
  cluster.name = rand_name(rng, "cluster");
  const int parts = rand_int(rng, 1, 4);
  for (int i = 0; i < parts; ++i) cluster.partitions.push_back(rand_partition(rng, i));
  if (rand_bool(rng)) cluster.fabric = rand_fabric(rng, cluster.partitions);
  if (rand_bool(rng)) cluster.storage = rand_storage(rng);
  if (rand_bool(rng)) {
    hpcmodel::FacilitySpec facility;
    facility.electrical_capacity_watts = rand_real(rng, 1e5, 5e6);
    if (rand_bool(rng)) {
      facility.planned_capacity_watts = facility.electrical_capacity_watts * 1.5;
    }
    if (rand_bool(rng)) facility.heat_reuse_fraction_min = rand_real(rng, 0.0, 1.0);
    cluster.facility = facility;
  }
  if (rand_bool(rng)) cluster.measurements = rand_measurements(rng, cluster.partitions.front());
  return cluster;
}

// ---------------------------------------------------------------------------
// Driving the installed command-line binary
// ---------------------------------------------------------------------------

#ifdef HPCMODEL_CLI_PATH
struct CliResult {
  int exit_code = -1;
  std::string output;
};

// Runs the real CLI binary with stderr silenced and captures stdout.
inline CliResult run_cli(const std::string& args) {
  const std::string command = std::string(HPCMODEL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  CliResult result;
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = ::pclose(pipe);
  if (status >= 0 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}
#endif  // HPCMODEL_CLI_PATH

}  // namespace testutil
