#include "hpcmodel/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "hpcmodel/errors.hpp"

namespace hpcmodel {

namespace {

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

class Checker {
 public:
  explicit Checker(std::vector<std::string>& out) : out_(out) {}

  void fail(const std::string& path, const std::string& message) {
    out_.push_back(path + ": " + message);
  }
  void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) fail(path, message);
  }

 private:
  std::vector<std::string>& out_;
};

void check_range(Checker& c, const std::string& path, const Range& r) {
  c.require(r.low >= 0.0, path, "interval bound must be nonnegative");
  c.require(r.low <= r.high, path, "interval low exceeds high");
}

void check_cache(Checker& c, const std::string& path, const CacheLevel& cache) {
  c.require(!cache.level.empty(), path + ".level", "cache level name must be nonempty");
  c.require(cache.size_bytes > 0, path + ".size_bytes", "cache size must be positive");
  c.require(cache.sharing_cores >= 1, path + ".sharing_cores",
            "cores sharing a cache must be at least 1");
  if (cache.associativity) {
    c.require(*cache.associativity >= 1, path + ".associativity",
              "associativity must be at least 1");
  }
  if (cache.latency_cycles_documented) {
    check_range(c, path + ".latency_cycles_documented", *cache.latency_cycles_documented);
  }
  if (cache.latency_cycles_measured) {
    check_range(c, path + ".latency_cycles_measured", *cache.latency_cycles_measured);
  }
}

void check_cpu(Checker& c, const std::string& path, const CpuSpec& cpu) {
  c.require(!cpu.model.empty(), path + ".model", "cpu model must be nonempty");
  c.require(cpu.sockets_per_node >= 1, path + ".sockets_per_node",
            "socket count must be at least 1");
  c.require(cpu.cores_per_socket >= 1, path + ".cores_per_socket",
            "core count must be at least 1");
  c.require(cpu.base_frequency_ghz > 0.0, path + ".base_frequency_ghz",
            "base frequency must be positive");
  c.require(cpu.boost_frequency_ghz > 0.0, path + ".boost_frequency_ghz",
            "boost frequency must be positive");
  c.require(cpu.base_frequency_ghz <= cpu.boost_frequency_ghz, path + ".base_frequency_ghz",
            "base frequency exceeds boost frequency");
  c.require(cpu.tdp_watts_per_socket > 0.0, path + ".tdp_watts_per_socket",
            "socket TDP must be positive");
  for (std::size_t i = 0; i < cpu.caches.size(); ++i) {
    check_cache(c, idx(path + ".caches", i), cpu.caches[i]);
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < cpu.vector_variants.size(); ++i) {
    const auto& v = cpu.vector_variants[i];
    const std::string vp = idx(path + ".vector_variants", i);
    c.require(!v.name.empty(), vp + ".name", "variant name must be nonempty");
    c.require(v.execution_units >= 1, vp + ".execution_units",
              "execution units must be at least 1");
    c.require(v.elements_per_vector >= 1, vp + ".elements_per_vector",
              "elements per vector must be at least 1");
    c.require(v.operations_per_element >= 1, vp + ".operations_per_element",
              "operations per element must be at least 1");
    if (!names.insert(v.name).second) {
      c.fail(vp + ".name", "duplicate variant name '" + v.name + "'");
    }
  }
}

void check_memory(Checker& c, const std::string& path, const MemoryConfig& m) {
  c.require(m.capacity_bytes > 0, path + ".capacity_bytes", "memory capacity must be positive");
  c.require(m.channels_per_socket >= 1, path + ".channels_per_socket",
            "channel count must be at least 1");
  c.require(m.transfer_rate_gt_s > 0.0, path + ".transfer_rate_gt_s",
            "transfer rate must be positive");
  c.require(m.bytes_per_transfer >= 1, path + ".bytes_per_transfer",
            "bytes per transfer must be at least 1");
}

void check_hbm(Checker& c, const std::string& path, const HbmConfig& h) {
  c.require(h.stacks >= 1, path + ".stacks", "stack count must be at least 1");
  c.require(h.channels_per_stack >= 1, path + ".channels_per_stack",
            "channel count must be at least 1");
  c.require(h.pseudo_channels_per_channel >= 1, path + ".pseudo_channels_per_channel",
            "pseudo-channel count must be at least 1");
  c.require(h.bits_per_pseudo_channel >= 1, path + ".bits_per_pseudo_channel",
            "pseudo-channel width must be at least 1 bit");
  c.require(h.controller_clock_mhz > 0.0, path + ".controller_clock_mhz",
            "controller clock must be positive");
  c.require(h.data_rate_multiplier >= 1, path + ".data_rate_multiplier",
            "data-rate multiplier must be at least 1");
}

void check_bsp_fraction(Checker& c, const std::string& path, const BspFraction& f) {
  c.require(f.fraction >= 0.0 && f.fraction <= 1.0, path + ".fraction",
            "overhead fraction must lie in [0, 1]");
}

void check_fpga_resources(Checker& c, const std::string& path, const FpgaResources& r) {
  if (r.luts_packed) {
    c.require(*r.luts_packed >= r.luts, path + ".luts_packed",
              "packed LUT bound must not be below the plain LUT count");
  }
  for (std::size_t i = 0; i < r.ram_blocks.size(); ++i) {
    const std::string bp = idx(path + ".ram_blocks", i);
    c.require(!r.ram_blocks[i].kind.empty(), bp + ".kind", "RAM block kind must be nonempty");
    c.require(r.ram_blocks[i].kibit_per_block > 0, bp + ".kibit_per_block",
              "RAM block capacity must be positive");
  }
  if (r.bsp_overhead) {
    if (r.bsp_overhead->logic) check_bsp_fraction(c, path + ".bsp_overhead.logic", *r.bsp_overhead->logic);
    if (r.bsp_overhead->dsp) check_bsp_fraction(c, path + ".bsp_overhead.dsp", *r.bsp_overhead->dsp);
    if (r.bsp_overhead->bram) check_bsp_fraction(c, path + ".bsp_overhead.bram", *r.bsp_overhead->bram);
  }
}

void check_accelerator(Checker& c, const std::string& path, const AcceleratorSpec& a) {
  c.require(!a.model.empty(), path + ".model", "accelerator model must be nonempty");
  c.require(a.tdp_watts > 0.0, path + ".tdp_watts", "accelerator TDP must be positive");
  for (std::size_t i = 0; i < a.memory_systems.size(); ++i) {
    const auto& m = a.memory_systems[i];
    const std::string mp = idx(path + ".memory_systems", i);
    c.require(!m.label.empty(), mp + ".label", "memory system label must be nonempty");
    c.require(m.capacity_bytes > 0, mp + ".capacity_bytes", "memory capacity must be positive");
    c.require(m.peak_bandwidth_gb_s > 0.0, mp + ".peak_bandwidth_gb_s",
              "peak bandwidth must be positive");
    if (m.hbm) check_hbm(c, mp + ".hbm", *m.hbm);
  }
  for (const auto& [precision, tflops] : a.throughput_table) {
    c.require(tflops > 0.0, path + ".throughput_table." + precision,
              "throughput must be positive");
  }
  if (a.kind == AcceleratorKind::gpu) {
    c.require(!a.throughput_table.empty(), path + ".throughput_table",
              "gpu record requires a nonempty throughput table");
    c.require(!a.fpga_resources.has_value(), path + ".fpga_resources",
              "gpu record must not carry fpga resources");
  } else {
    c.require(a.fpga_resources.has_value(), path + ".fpga_resources",
              "fpga record requires a resource description");
    c.require(a.throughput_table.empty(), path + ".throughput_table",
              "fpga record must not carry a gpu throughput table");
    if (a.fpga_resources) check_fpga_resources(c, path + ".fpga_resources", *a.fpga_resources);
  }
  if (a.host_interface) {
    c.require(a.host_interface->bandwidth_gb_s > 0.0, path + ".host_interface.bandwidth_gb_s",
              "host interface bandwidth must be positive");
  }
  if (a.network_ports) {
    c.require(a.network_ports->count >= 1, path + ".network_ports.count",
              "network port count must be at least 1");
    c.require(a.network_ports->rate_gbit_s > 0.0, path + ".network_ports.rate_gbit_s",
              "network port rate must be positive");
  }
}

// Every LinkRate label must map to one rate throughout the description.
class LinkRateTable {
 public:
  explicit LinkRateTable(Checker& c) : c_(c) {}

  void note(const std::string& path, const LinkRate& rate) {
    c_.require(!rate.label.empty(), path + ".label", "link rate label must be nonempty");
    c_.require(rate.gbit_s > 0.0, path + ".gbit_s", "link rate must be positive");
    auto [it, inserted] = seen_.emplace(rate.label, rate.gbit_s);
    if (!inserted && it->second != rate.gbit_s) {
      c_.fail(path, "link rate label '" + rate.label + "' bound to " +
                        std::to_string(rate.gbit_s) + " Gbit/s but previously seen as " +
                        std::to_string(it->second) + " Gbit/s");
    }
  }

 private:
  Checker& c_;
  std::map<std::string, double> seen_;
};

void check_partition(Checker& c, LinkRateTable& rates, const std::string& path,
                     const Partition& p) {
  c.require(!p.name.empty(), path + ".name", "partition name must be nonempty");
  c.require(p.node_count > 0, path + ".node_count", "node count must be positive");
  c.require(p.nodes_per_blade == 1 || p.nodes_per_blade == 2, path + ".nodes_per_blade",
            "nodes per blade must be 1 or 2");
  if (p.nodes_per_blade > 0 &&
      p.node_count % static_cast<std::uint64_t>(p.nodes_per_blade) != 0) {
    c.fail(path + ".node_count", "node count " + std::to_string(p.node_count) +
                                     " is not divisible by nodes_per_blade " +
                                     std::to_string(p.nodes_per_blade));
  }
  if (p.active_nodes) {
    c.require(*p.active_nodes <= p.node_count, path + ".active_nodes",
              "active nodes exceed the installed node count");
    c.require(*p.active_nodes > 0, path + ".active_nodes", "active nodes must be positive");
  }
  check_cpu(c, path + ".cpu", p.cpu);
  check_memory(c, path + ".memory", p.memory);
  for (std::size_t i = 0; i < p.accelerators.size(); ++i) {
    const std::string ap = idx(path + ".accelerators", i);
    c.require(p.accelerators[i].per_node >= 1, ap + ".per_node",
              "accelerators per node must be at least 1");
    check_accelerator(c, ap + ".spec", p.accelerators[i].spec);
  }
  if (p.link) {
    rates.note(path + ".link.rate", p.link->rate);
    c.require(p.link->links_per_blade >= 1, path + ".link.links_per_blade",
              "links per blade must be at least 1");
    if (p.link->shared_io) {
      c.require(p.nodes_per_blade == 2, path + ".link.shared_io",
                "a shared adapter requires 2 nodes per blade");
    }
  }
}

void check_fabric(Checker& c, LinkRateTable& rates, const ClusterSpec& cluster,
                  const FabricSpec& f) {
  const std::string path = "fabric";
  c.require(f.spine_count >= 1, path + ".spine_count", "spine count must be at least 1");
  c.require(f.leaf_count >= 1, path + ".leaf_count", "leaf count must be at least 1");
  c.require(f.switch_radix >= 1, path + ".switch_radix", "switch radix must be at least 1");
  c.require(f.uplinks_per_leaf_per_spine >= 1, path + ".uplinks_per_leaf_per_spine",
            "uplinks per leaf per spine must be at least 1");
  rates.note(path + ".port_rate", f.port_rate);
  if (f.spine_count >= 1 && f.uplinks_per_leaf_per_spine >= 1) {
    if (f.uplink_ports_per_leaf() > f.switch_radix) {
      c.fail(path + ".uplinks_per_leaf_per_spine",
             "leaf uplink ports " + std::to_string(f.uplink_ports_per_leaf()) +
                 " exceed the switch radix " + std::to_string(f.switch_radix));
    }
    const long long spine_ports =
        static_cast<long long>(f.leaf_count) * f.uplinks_per_leaf_per_spine;
    if (spine_ports > f.switch_radix) {
      c.fail(path + ".leaf_count", "spine downlink ports " + std::to_string(spine_ports) +
                                       " exceed the switch radix " +
                                       std::to_string(f.switch_radix));
    }
  }
  for (std::size_t i = 0; i < f.endpoint_attachments.size(); ++i) {
    const auto& att = f.endpoint_attachments[i];
    const std::string ap = idx(path + ".endpoint_attachments", i);
    rates.note(ap + ".rate", att.rate);
    c.require(att.links_per_blade >= 1, ap + ".links_per_blade",
              "links per blade must be at least 1");
    const Partition* part = cluster.find_partition(att.partition);
    if (part == nullptr) {
      c.fail(ap + ".partition", "references unknown partition '" + att.partition + "'");
    } else if (att.blades != part->blade_count()) {
      c.fail(ap + ".blades", "attachment declares " + std::to_string(att.blades) +
                                 " blades but partition '" + att.partition + "' has " +
                                 std::to_string(part->blade_count()));
    }
  }
  for (std::size_t i = 0; i < f.auxiliary_attachments.size(); ++i) {
    const auto& aux = f.auxiliary_attachments[i];
    const std::string ap = idx(path + ".auxiliary_attachments", i);
    c.require(!aux.name.empty(), ap + ".name", "auxiliary endpoint name must be nonempty");
    c.require(aux.links >= 1, ap + ".links", "auxiliary link count must be at least 1");
    rates.note(ap + ".rate", aux.rate);
  }
}

void check_storage(Checker& c, const StorageSpec& s) {
  const std::string path = "storage";
  std::uint64_t raw = 0;
  for (std::size_t i = 0; i < s.pools.size(); ++i) {
    const auto& pool = s.pools[i];
    const std::string pp = idx(path + ".pools", i);
    c.require(!pool.name.empty(), pp + ".name", "pool name must be nonempty");
    c.require(pool.device_count > 0, pp + ".device_count", "device count must be positive");
    c.require(pool.device_capacity_bytes > 0, pp + ".device_capacity_bytes",
              "device capacity must be positive");
    raw += pool.device_count * pool.device_capacity_bytes;
  }
  c.require(s.usable_capacity_bytes > 0, path + ".usable_capacity_bytes",
            "usable capacity must be positive");
  if (!s.pools.empty() && s.usable_capacity_bytes > raw) {
    c.fail(path + ".usable_capacity_bytes",
           "usable capacity " + std::to_string(s.usable_capacity_bytes) +
               " exceeds raw capacity " + std::to_string(raw));
  }
  for (std::size_t i = 0; i < s.servers.size(); ++i) {
    const std::string sp = idx(path + ".servers", i);
    c.require(!s.servers[i].name.empty(), sp + ".name", "server name must be nonempty");
    c.require(s.servers[i].canisters >= 1, sp + ".canisters",
              "canister count must be at least 1");
  }
}

void check_facility(Checker& c, const FacilitySpec& f) {
  const std::string path = "facility";
  c.require(f.electrical_capacity_watts > 0.0, path + ".electrical_capacity_watts",
            "electrical capacity must be positive");
  if (f.planned_capacity_watts) {
    c.require(*f.planned_capacity_watts >= f.electrical_capacity_watts,
              path + ".planned_capacity_watts",
              "planned capacity must not be below the current capacity");
  }
  if (f.heat_reuse_fraction_min) {
    c.require(*f.heat_reuse_fraction_min >= 0.0 && *f.heat_reuse_fraction_min <= 1.0,
              path + ".heat_reuse_fraction_min", "heat reuse fraction must lie in [0, 1]");
  }
}

void check_measurements(Checker& c, const ClusterSpec& cluster, const MeasurementSet& m) {
  const std::string path = "measurements";
  const Partition* part = nullptr;
  if (!m.partition.empty()) {
    part = cluster.find_partition(m.partition);
    c.require(part != nullptr, path + ".partition",
              "references unknown partition '" + m.partition + "'");
  } else {
    c.require(m.flops_runs.empty() && m.stream_runs.empty(), path + ".partition",
              "node-level runs require a partition reference");
  }
  for (std::size_t i = 0; i < m.flops_runs.size(); ++i) {
    const auto& run = m.flops_runs[i];
    const std::string rp = idx(path + ".flops_runs", i);
    c.require(run.tflops > 0.0, rp + ".tflops", "measured throughput must be positive");
    c.require(run.observed_frequency_ghz > 0.0, rp + ".observed_frequency_ghz",
              "observed frequency must be positive");
    if (part != nullptr && part->cpu.find_variant(run.variant) == nullptr) {
      c.fail(rp + ".variant", "references unknown vector variant '" + run.variant + "'");
    }
  }
  for (std::size_t i = 0; i < m.stream_runs.size(); ++i) {
    c.require(m.stream_runs[i].gb_s > 0.0, idx(path + ".stream_runs", i) + ".gb_s",
              "measured bandwidth must be positive");
  }
  for (std::size_t i = 0; i < m.applications.size(); ++i) {
    const auto& app = m.applications[i];
    const std::string ap = idx(path + ".applications", i);
    c.require(!app.name.empty(), ap + ".name", "application name must be nonempty");
    c.require(app.value > 0.0, ap + ".value", "measured value must be positive");
    c.require(!app.unit.empty(), ap + ".unit", "unit must be nonempty");
  }
  for (std::size_t i = 0; i < m.xbtest.size(); ++i) {
    const auto& x = m.xbtest[i];
    const std::string xp = idx(path + ".xbtest", i);
    for (std::size_t k = 0; k < x.mode_fractions.size(); ++k) {
      c.require(x.mode_fractions[k] > 0.0 && x.mode_fractions[k] <= 1.0,
                idx(xp + ".mode_fractions", k),
                "sustained fraction must lie in (0, 1]");
    }
    bool found = false;
    for (const auto& p : cluster.partitions) {
      for (const auto& g : p.accelerators) {
        if (g.spec.model == x.accelerator_model &&
            g.spec.find_memory(x.memory_label) != nullptr) {
          found = true;
        }
      }
    }
    if (!found) {
      c.fail(xp, "no accelerator '" + x.accelerator_model + "' with memory system '" +
                     x.memory_label + "' exists in this spec");
    }
  }
  for (std::size_t i = 0; i < m.scalars.size(); ++i) {
    const auto& s = m.scalars[i];
    const std::string sp = idx(path + ".scalars", i);
    c.require(!s.name.empty(), sp + ".name", "measurement name must be nonempty");
    c.require(s.value > 0.0, sp + ".value", "measured value must be positive");
  }
  if (m.pue_sample) {
    c.require(m.pue_sample->it_energy > 0.0, path + ".pue_sample.it_energy",
              "IT energy must be positive");
    c.require(m.pue_sample->total_energy >= m.pue_sample->it_energy,
              path + ".pue_sample.total_energy",
              "facility energy below IT energy signals inconsistent metering");
  }
}

}  // namespace

const VectorVariant* CpuSpec::find_variant(std::string_view name) const {
  for (const auto& v : vector_variants) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

const MemorySystem* AcceleratorSpec::find_memory(std::string_view label) const {
  for (const auto& m : memory_systems) {
    if (m.label == label) return &m;
  }
  return nullptr;
}

std::uint64_t FpgaResources::total_ram_kibit() const {
  std::uint64_t total = 0;
  for (const auto& group : ram_blocks) total += group.capacity_kibit();
  return total;
}

const Partition* ClusterSpec::find_partition(std::string_view name) const {
  for (const auto& p : partitions) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::uint64_t total_nodes(const ClusterSpec& cluster) {
  std::uint64_t sum = 0;
  for (const auto& p : cluster.partitions) sum += p.node_count;
  return sum;
}

std::uint64_t total_cores(const ClusterSpec& cluster) {
  std::uint64_t sum = 0;
  for (const auto& p : cluster.partitions) {
    sum += p.node_count * static_cast<std::uint64_t>(p.cpu.cores_per_node());
  }
  return sum;
}

std::vector<std::string> collect_violations(const ClusterSpec& cluster) {
  std::vector<std::string> out;
  Checker c(out);
  LinkRateTable rates(c);

  c.require(!cluster.partitions.empty(), "partitions", "a cluster needs at least one partition");
  std::set<std::string> names;
  for (std::size_t i = 0; i < cluster.partitions.size(); ++i) {
    const auto& p = cluster.partitions[i];
    const std::string path = idx("partitions", i);
    if (!p.name.empty() && !names.insert(p.name).second) {
      c.fail(path + ".name", "duplicate partition name '" + p.name + "'");
    }
    check_partition(c, rates, path, p);
  }
  if (cluster.fabric) check_fabric(c, rates, cluster, *cluster.fabric);
  if (cluster.storage) check_storage(c, *cluster.storage);
  if (cluster.facility) check_facility(c, *cluster.facility);
  if (cluster.measurements) check_measurements(c, cluster, *cluster.measurements);
  return out;
}

void validate(const ClusterSpec& cluster) {
  const auto violations = collect_violations(cluster);
  if (!violations.empty()) {
    const std::string& first = violations.front();
    const auto colon = first.find(": ");
    if (colon == std::string::npos) throw ValidationError("cluster", first);
    throw ValidationError(first.substr(0, colon), first.substr(colon + 2));
  }
}

const char* to_string(AcceleratorKind kind) {
  return kind == AcceleratorKind::gpu ? "gpu" : "fpga";
}

const char* to_string(Medium medium) {
  return medium == Medium::nvme ? "nvme" : "hdd";
}

const char* to_string(Orientation orientation) {
  return orientation == Orientation::higher_is_better ? "higher" : "lower";
}

}  // namespace hpcmodel
