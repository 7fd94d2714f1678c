#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpcmodel {

// ---------------------------------------------------------------------------
// Interconnect links
// ---------------------------------------------------------------------------

struct LinkRate {
  std::string label;    // e.g. "NDR200", "NDR400", "NDR800"
  double gbit_s = 0.0;  // unidirectional signalling rate

  bool operator==(const LinkRate&) const = default;
};

// ---------------------------------------------------------------------------
// CPU
// ---------------------------------------------------------------------------

// Inclusive [low, high] interval, e.g. a load-to-use latency range in cycles.
struct Range {
  double low = 0.0;
  double high = 0.0;

  bool operator==(const Range&) const = default;
};

struct CacheLevel {
  std::string level;  // "L1I", "L1D", "L2", "L3"
  std::uint64_t size_bytes = 0;
  int sharing_cores = 1;  // cores sharing one instance of this cache
  std::optional<int> associativity;
  std::optional<Range> latency_cycles_documented;
  std::optional<Range> latency_cycles_measured;

  bool operator==(const CacheLevel&) const = default;
};

// One row of the vector-throughput model: how many independent execution
// units retire vector operations per cycle, how wide the vectors are, and
// how many floating-point operations each element contributes per cycle.
struct VectorVariant {
  std::string name;  // e.g. "AVX-512 FMA+ADD"
  int execution_units = 1;
  int elements_per_vector = 1;
  int operations_per_element = 1;

  bool operator==(const VectorVariant&) const = default;
};

struct CpuSpec {
  std::string model;
  int sockets_per_node = 1;
  int cores_per_socket = 1;
  double base_frequency_ghz = 0.0;
  double boost_frequency_ghz = 0.0;
  double tdp_watts_per_socket = 0.0;
  std::vector<CacheLevel> caches;
  std::vector<VectorVariant> vector_variants;

  int cores_per_node() const { return sockets_per_node * cores_per_socket; }
  const VectorVariant* find_variant(std::string_view name) const;

  bool operator==(const CpuSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Memory
// ---------------------------------------------------------------------------

struct MemoryConfig {
  std::string technology;  // e.g. "DDR5-6400"
  std::uint64_t capacity_bytes = 0;
  int channels_per_socket = 1;
  double transfer_rate_gt_s = 0.0;  // giga-transfers per second
  int bytes_per_transfer = 8;
  std::string numa_mode;  // e.g. "NPS4"

  bool operator==(const MemoryConfig&) const = default;
};

// Stacked high-bandwidth memory described at the controller level; peak
// bandwidth follows from the transaction width and the effective data rate.
struct HbmConfig {
  int stacks = 1;
  int channels_per_stack = 1;
  int pseudo_channels_per_channel = 1;
  int bits_per_pseudo_channel = 64;
  double controller_clock_mhz = 0.0;
  int data_rate_multiplier = 2;  // transfers per controller clock

  bool operator==(const HbmConfig&) const = default;
};

// One addressable memory of an accelerator (HBM stack group, DDR bank, ...).
struct MemorySystem {
  std::string label;  // e.g. "HBM2E", "DDR4"
  std::uint64_t capacity_bytes = 0;
  double peak_bandwidth_gb_s = 0.0;
  std::optional<HbmConfig> hbm;

  bool operator==(const MemorySystem&) const = default;
};

// ---------------------------------------------------------------------------
// Accelerators
// ---------------------------------------------------------------------------

enum class AcceleratorKind { gpu, fpga };

struct DspBlocks {
  std::uint64_t count = 0;
  std::string architecture;  // e.g. "DSP58"

  bool operator==(const DspBlocks&) const = default;
};

struct RamBlockGroup {
  std::string kind;  // e.g. "RAMB36E5", "URAM", "M20K"
  std::uint64_t count = 0;
  std::uint64_t kibit_per_block = 0;

  // Exact integer identity: total capacity in Kibit.
  std::uint64_t capacity_kibit() const { return count * kibit_per_block; }

  bool operator==(const RamBlockGroup&) const = default;
};

// Fraction of a resource consumed by the vendor shell / board support
// infrastructure. `upper_bound` marks values documented only as "< x".
struct BspFraction {
  double fraction = 0.0;
  bool upper_bound = false;

  bool operator==(const BspFraction&) const = default;
};

struct BspOverhead {
  std::optional<BspFraction> logic;
  std::optional<BspFraction> dsp;
  std::optional<BspFraction> bram;

  bool operator==(const BspOverhead&) const = default;
};

struct FpgaResources {
  std::uint64_t luts = 0;
  // Some fabrics can pack two smaller LUTs per adaptive logic module; this is
  // the packed upper bound when the vendor documents one.
  std::optional<std::uint64_t> luts_packed;
  DspBlocks dsp_blocks;
  std::vector<RamBlockGroup> ram_blocks;
  std::optional<BspOverhead> bsp_overhead;

  std::uint64_t total_ram_kibit() const;

  bool operator==(const FpgaResources&) const = default;
};

struct HostInterface {
  std::string generation;  // e.g. "PCIe 5.0 x16"
  double bandwidth_gb_s = 0.0;

  bool operator==(const HostInterface&) const = default;
};

struct NetworkPorts {
  int count = 0;
  double rate_gbit_s = 0.0;

  bool operator==(const NetworkPorts&) const = default;
};

struct AcceleratorSpec {
  AcceleratorKind kind = AcceleratorKind::gpu;
  std::string model;
  double tdp_watts = 0.0;
  std::vector<MemorySystem> memory_systems;
  // Precision label -> dense TFLOP/s; gpu records only.
  std::map<std::string, double> throughput_table;
  // fpga records only.
  std::optional<FpgaResources> fpga_resources;
  std::optional<HostInterface> host_interface;
  std::optional<NetworkPorts> network_ports;

  const MemorySystem* find_memory(std::string_view label) const;

  bool operator==(const AcceleratorSpec&) const = default;
};

struct AcceleratorGroup {
  int per_node = 1;
  AcceleratorSpec spec;

  bool operator==(const AcceleratorGroup&) const = default;
};

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

// Fabric connection of one blade of this partition. When `shared_io` is set,
// the blade's nodes share a single adapter; otherwise every node drives
// `links_per_blade` links of its own.
struct PartitionLink {
  LinkRate rate;
  int links_per_blade = 1;
  bool shared_io = false;

  bool operator==(const PartitionLink&) const = default;
};

struct Partition {
  std::string name;
  std::uint64_t node_count = 0;
  int nodes_per_blade = 1;
  // Subset currently powered/in service (pilot phases); defaults to all.
  std::optional<std::uint64_t> active_nodes;
  CpuSpec cpu;
  MemoryConfig memory;
  std::vector<AcceleratorGroup> accelerators;
  std::uint64_t local_storage_bytes = 0;
  std::optional<PartitionLink> link;
  std::optional<std::string> note;

  std::uint64_t blade_count() const {
    return nodes_per_blade > 0 ? node_count / static_cast<std::uint64_t>(nodes_per_blade) : 0;
  }
  std::uint64_t effective_nodes() const { return active_nodes.value_or(node_count); }

  bool operator==(const Partition&) const = default;
};

// ---------------------------------------------------------------------------
// Fabric
// ---------------------------------------------------------------------------

struct FabricAttachment {
  std::string partition;  // must name an existing partition
  std::uint64_t blades = 0;
  int links_per_blade = 1;
  LinkRate rate;
  bool shared_io = false;

  bool operator==(const FabricAttachment&) const = default;
};

// Non-compute endpoints (storage servers, login/admin nodes) that consume
// leaf ports but are not described as partitions.
struct AuxiliaryAttachment {
  std::string name;
  int links = 0;
  LinkRate rate;

  bool operator==(const AuxiliaryAttachment&) const = default;
};

// Two-level fat tree: `leaf_count` leaf switches, each wired to every spine
// with `uplinks_per_leaf_per_spine` ports at `port_rate`.
struct FabricSpec {
  int spine_count = 0;
  int leaf_count = 0;
  int switch_radix = 0;
  LinkRate port_rate;
  int uplinks_per_leaf_per_spine = 1;
  std::vector<FabricAttachment> endpoint_attachments;
  std::vector<AuxiliaryAttachment> auxiliary_attachments;

  int uplink_ports_per_leaf() const { return spine_count * uplinks_per_leaf_per_spine; }
  int downlink_port_budget_per_leaf() const { return switch_radix - uplink_ports_per_leaf(); }

  bool operator==(const FabricSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Storage
// ---------------------------------------------------------------------------

enum class Medium { nvme, hdd };

struct Pool {
  std::string name;
  std::uint64_t device_count = 0;
  std::uint64_t device_capacity_bytes = 0;
  Medium medium = Medium::nvme;

  bool operator==(const Pool&) const = default;
};

struct StorageServer {
  std::string name;
  int canisters = 1;

  bool operator==(const StorageServer&) const = default;
};

struct StorageSpec {
  std::string filesystem_label;
  std::uint64_t usable_capacity_bytes = 0;
  std::vector<Pool> pools;
  std::vector<StorageServer> servers;

  bool operator==(const StorageSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Facility
// ---------------------------------------------------------------------------

struct FacilitySpec {
  double electrical_capacity_watts = 0.0;
  std::optional<double> planned_capacity_watts;
  std::optional<double> heat_reuse_fraction_min;

  bool operator==(const FacilitySpec&) const = default;
};

// Facility-side and IT-side energy over one metering period, in any common
// unit (PUE is scale invariant).
struct EnergySample {
  double total_energy = 0.0;
  double it_energy = 0.0;
  std::string period_label;

  bool operator==(const EnergySample&) const = default;
};

// ---------------------------------------------------------------------------
// Measurements
// ---------------------------------------------------------------------------

enum class Orientation { higher_is_better, lower_is_better };

struct FlopsRun {
  std::string variant;  // must name a VectorVariant of the partition CPU
  double observed_frequency_ghz = 0.0;
  double tflops = 0.0;
  std::string source;

  bool operator==(const FlopsRun&) const = default;
};

struct StreamRun {
  std::string numa_mode;
  double gb_s = 0.0;
  std::string source;

  bool operator==(const StreamRun&) const = default;
};

struct AppResult {
  std::string name;
  double value = 0.0;
  std::string unit;
  Orientation better = Orientation::higher_is_better;
  std::string source;

  bool operator==(const AppResult&) const = default;
};

// Sustained-throughput fractions of peak for the four canonical memory test
// modes, in order: only-write, only-read, alternate write/read, simultaneous
// write+read.
struct XbtestSeries {
  std::string accelerator_model;
  std::string memory_label;
  std::array<double, 4> mode_fractions{};
  std::string source;

  bool operator==(const XbtestSeries&) const = default;
};

struct ScalarMeasurement {
  std::string name;
  double value = 0.0;
  std::string unit;
  std::string source;

  bool operator==(const ScalarMeasurement&) const = default;
};

struct MeasurementSet {
  std::string partition;  // partition the node-level runs were taken on
  std::vector<FlopsRun> flops_runs;
  std::vector<StreamRun> stream_runs;
  std::vector<AppResult> applications;
  std::vector<XbtestSeries> xbtest;
  std::vector<ScalarMeasurement> scalars;
  std::optional<EnergySample> pue_sample;

  bool operator==(const MeasurementSet&) const = default;
};

// ---------------------------------------------------------------------------
// Cluster
// ---------------------------------------------------------------------------

struct ClusterSpec {
  std::string name;
  std::vector<Partition> partitions;
  std::optional<FabricSpec> fabric;
  std::optional<StorageSpec> storage;
  std::optional<FacilitySpec> facility;
  std::optional<MeasurementSet> measurements;

  const Partition* find_partition(std::string_view name) const;

  bool operator==(const ClusterSpec&) const = default;
};

std::uint64_t total_nodes(const ClusterSpec& cluster);
std::uint64_t total_cores(const ClusterSpec& cluster);

// All semantic-invariant violations, each as "<field path>: <message>".
// An empty result means the description is valid.
std::vector<std::string> collect_violations(const ClusterSpec& cluster);

// Throws ValidationError (first violation) if any invariant fails.
void validate(const ClusterSpec& cluster);

const char* to_string(AcceleratorKind kind);
const char* to_string(Medium medium);
const char* to_string(Orientation orientation);

}  // namespace hpcmodel
