#include "hpcmodel/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "hpcmodel/errors.hpp"
#include "hpcmodel/facility.hpp"
#include "hpcmodel/topology.hpp"
#include "hpcmodel/version.hpp"

namespace hpcmodel::analysis {

namespace {

using report::format_significant;
using report::Report;

std::string num(double value) { return format_significant(value, 6); }

Report make_report() {
  Report r;
  r.tool_version = kVersion;
  return r;
}

const Partition& select_partition(const ClusterSpec& cluster, const std::string& name) {
  if (cluster.partitions.empty()) {
    throw std::invalid_argument("cluster '" + cluster.name + "' has no partitions");
  }
  if (name.empty()) return cluster.partitions.front();
  const Partition* p = cluster.find_partition(name);
  if (p == nullptr) {
    throw std::invalid_argument("unknown partition '" + name + "' in cluster '" +
                                cluster.name + "'");
  }
  return *p;
}

std::string peak_provenance(const perf::PeakFlopsResult& row) {
  const auto& in = row.inputs;
  return "sockets " + std::to_string(in.sockets) + " x cores " +
         std::to_string(in.cores_per_socket) + " x " + num(in.frequency_ghz) +
         " GHz x units " + std::to_string(in.execution_units) + " x elements " +
         std::to_string(in.elements_per_vector) + " x ops " +
         std::to_string(in.operations_per_element) + " / 1000";
}

std::string membw_provenance(const Partition& p) {
  return std::to_string(p.cpu.sockets_per_node) + " sockets x " +
         std::to_string(p.memory.channels_per_socket) + " channels x " +
         num(p.memory.transfer_rate_gt_s) + " GT/s x " +
         std::to_string(p.memory.bytes_per_transfer) + " B (" + p.memory.technology + ")";
}

void add_efficiency(Report& r, const std::string& key, const perf::EfficiencyResult& eff,
                    const std::string& provenance) {
  r.add(key, eff.fraction, "fraction",
        "measured " + num(eff.measured) + " / theoretical " + num(eff.theoretical) +
            (provenance.empty() ? "" : "; " + provenance));
}

void append(Report& into, const Report& from) {
  into.findings.insert(into.findings.end(), from.findings.begin(), from.findings.end());
  into.violations.insert(into.violations.end(), from.violations.begin(),
                         from.violations.end());
}

void add_accelerator_findings(Report& r, const Partition& p, const AcceleratorGroup& group) {
  const AcceleratorSpec& a = group.spec;
  const std::string base = "accel." + a.model;
  if (a.kind == AcceleratorKind::gpu) {
    for (const auto& [precision, tflops] : a.throughput_table) {
      r.add(base + ".peak." + precision, tflops, "TFLOP/s", "per device, vendor throughput");
      r.add(base + ".node_peak." + precision,
            perf::accelerator_node_peak(a, group.per_node, precision), "TFLOP/s",
            std::to_string(group.per_node) + " devices x " + num(tflops) + " TFLOP/s");
      r.add(base + ".perf_per_watt." + precision, perf::perf_per_watt(a, precision),
            "GFLOP/s per W",
            num(tflops) + " TFLOP/s x 1000 / " + num(a.tdp_watts) + " W TDP");
    }
  }
  for (const auto& mem : a.memory_systems) {
    const std::string mb = base + ".mem." + mem.label;
    r.add(mb + ".bandwidth_gb_s", mem.peak_bandwidth_gb_s, "GB/s", "vendor peak");
    if (mem.hbm) {
      const auto hbm = perf::hbm_peak_bandwidth(*mem.hbm);
      r.add(mb + ".bits_per_transaction", static_cast<double>(hbm.bits_per_transaction),
            "bit",
            std::to_string(mem.hbm->stacks) + " stacks x " +
                std::to_string(mem.hbm->channels_per_stack) + " channels x " +
                std::to_string(mem.hbm->pseudo_channels_per_channel) + " pseudo-channels x " +
                std::to_string(mem.hbm->bits_per_pseudo_channel) + " bit");
      r.add(mb + ".derived_mb_s", hbm.mb_s, "MB/s",
            num(mem.hbm->controller_clock_mhz) + " MHz x " +
                std::to_string(mem.hbm->data_rate_multiplier) + " x " +
                std::to_string(hbm.bytes_per_transaction) + " B");
      r.add(mb + ".derived_gb_s", hbm.gb_s, "GB/s", "derived_mb_s / 1000");
    }
  }
  if (a.kind == AcceleratorKind::fpga && a.fpga_resources) {
    const auto& res = *a.fpga_resources;
    r.add(base + ".luts", static_cast<double>(res.luts), "LUT", "fabric total");
    if (res.luts_packed) {
      r.add(base + ".luts_packed", static_cast<double>(*res.luts_packed), "LUT",
            "two lookup tables per logic module");
    }
    r.add(base + ".dsp_blocks", static_cast<double>(res.dsp_blocks.count),
          res.dsp_blocks.architecture.empty() ? "block" : res.dsp_blocks.architecture,
          "fabric total");
    for (const auto& ram : res.ram_blocks) {
      r.add(base + ".ram." + ram.kind + ".kibit", static_cast<double>(ram.capacity_kibit()),
            "Kibit",
            std::to_string(ram.count) + " blocks x " + std::to_string(ram.kibit_per_block) +
                " Kibit");
    }
    r.add(base + ".ram_total_kibit", static_cast<double>(res.total_ram_kibit()), "Kibit",
          "sum over block groups");
    for (const auto& avail : perf::bsp_available(res)) {
      r.add(base + ".bsp." + avail.resource + ".available_min",
            static_cast<double>(avail.available_min), "",
            "total " + std::to_string(avail.total) + " x (1 - " +
                num(avail.overhead_fraction) + (avail.upper_bound ? " upper-bound" : "") +
                " shell overhead), floored");
      if (avail.upper_bound) {
        r.add(base + ".bsp." + avail.resource + ".available_max",
              static_cast<double>(avail.available_max), "",
              "overhead documented only as an upper bound");
      }
    }
  }
  (void)p;
}

}  // namespace

const VectorVariant* default_peak_variant(const CpuSpec& cpu) {
  const VectorVariant* best = nullptr;
  long long best_product = -1;
  for (const auto& v : cpu.vector_variants) {
    if (v.name.find('+') != std::string::npos) continue;
    const long long product = static_cast<long long>(v.execution_units) *
                              v.elements_per_vector * v.operations_per_element;
    if (product > best_product) {
      best = &v;
      best_product = product;
    }
  }
  if (best == nullptr && !cpu.vector_variants.empty()) best = &cpu.vector_variants.back();
  return best;
}

std::vector<perf::PeakFlopsResult> peak_rows(const ClusterSpec& cluster,
                                             const PeakQuery& query) {
  const Partition& partition = select_partition(cluster, query.partition);
  const double frequency =
      query.frequency_ghz > 0.0 ? query.frequency_ghz : partition.cpu.base_frequency_ghz;

  std::vector<perf::PeakFlopsResult> rows;
  if (query.variant.empty()) {
    for (const auto& v : partition.cpu.vector_variants) {
      rows.push_back(perf::peak_flops(partition.cpu, v, frequency));
    }
  } else {
    const VectorVariant* v = partition.cpu.find_variant(query.variant);
    if (v == nullptr) {
      throw std::invalid_argument("unknown vector variant '" + query.variant + "' for cpu " +
                                  partition.cpu.model);
    }
    rows.push_back(perf::peak_flops(partition.cpu, *v, frequency));
  }
  return rows;
}

Report peak_report(const ClusterSpec& cluster, const PeakQuery& query) {
  Report r = make_report();
  const Partition& partition = select_partition(cluster, query.partition);
  const double frequency =
      query.frequency_ghz > 0.0 ? query.frequency_ghz : partition.cpu.base_frequency_ghz;
  r.add("frequency_ghz", frequency, "GHz",
        query.frequency_ghz > 0.0 ? "requested" : "base frequency of " + partition.cpu.model);
  for (const auto& row : peak_rows(cluster, query)) {
    r.add("peak." + row.variant_name, row.tflops, "TFLOP/s",
          partition.name + " node, " + peak_provenance(row));
  }
  return r;
}

Report validation_report(const ClusterSpec& cluster) {
  Report r = make_report();
  r.violations = collect_violations(cluster);
  if (cluster.fabric) {
    try {
      const auto audit = topo::audit_fabric(*cluster.fabric, cluster);
      for (const auto& v : audit.violations) {
        if (std::find(r.violations.begin(), r.violations.end(), v) == r.violations.end()) {
          r.violations.push_back(v);
        }
      }
    } catch (const ValidationError& e) {
      const std::string message = e.what();
      if (std::find(r.violations.begin(), r.violations.end(), message) ==
          r.violations.end()) {
        r.violations.push_back(message);
      }
    }
  }
  r.add("partitions", static_cast<double>(cluster.partitions.size()), "", "partition count");
  r.add("nodes.total", static_cast<double>(total_nodes(cluster)), "nodes",
        "sum of partition node counts");
  r.add("cores.total", static_cast<double>(total_cores(cluster)), "cores",
        "sum of node_count x sockets x cores per socket");
  r.add("violations", static_cast<double>(r.violations.size()), "", "invariant violations");
  return r;
}

Report topology_report(const ClusterSpec& cluster) {
  if (!cluster.fabric) {
    throw std::invalid_argument("cluster '" + cluster.name + "' has no fabric section");
  }
  const FabricSpec& fabric = *cluster.fabric;
  Report r = make_report();
  const auto audit = topo::audit_fabric(fabric, cluster);

  r.add("topology.spines", fabric.spine_count, "", "spine switches");
  r.add("topology.leaves", fabric.leaf_count, "", "leaf switches");
  r.add("topology.switch_radix", fabric.switch_radix, "ports",
        fabric.port_rate.label + " ports per switch");
  r.add("topology.port_rate", fabric.port_rate.gbit_s, "Gbit/s", fabric.port_rate.label);
  r.add("topology.uplink_ports_per_leaf", fabric.uplink_ports_per_leaf(), "ports",
        std::to_string(fabric.spine_count) + " spines x " +
            std::to_string(fabric.uplinks_per_leaf_per_spine) + " links");
  r.add("topology.uplink_gbit_s_per_leaf", audit.uplink_gbit_s_per_leaf, "Gbit/s",
        std::to_string(fabric.uplink_ports_per_leaf()) + " ports x " +
            num(fabric.port_rate.gbit_s) + " Gbit/s");
  r.add("topology.downlink_port_budget_per_leaf", fabric.downlink_port_budget_per_leaf(),
        "ports", "radix minus uplink ports");
  r.add("topology.downlink_budget_gbit_s_per_leaf", audit.downlink_budget_gbit_s_per_leaf,
        "Gbit/s", "downlink port budget at the full port rate");
  r.add("topology.blocking_port_basis", audit.blocking_port_basis, "ratio",
        "(radix " + std::to_string(fabric.switch_radix) + " - uplinks " +
            std::to_string(fabric.uplink_ports_per_leaf()) + ") / uplinks " +
            std::to_string(fabric.uplink_ports_per_leaf()));
  r.add("topology.blocking_attached_basis", audit.blocking_attached_basis, "ratio",
        "attached " + num(audit.attached_gbit_s_total) + " Gbit/s / (" +
            std::to_string(fabric.leaf_count) + " leaves x " +
            num(audit.uplink_gbit_s_per_leaf) + " Gbit/s)");
  r.add("topology.bisection_gbit_s", audit.bisection_gbit_s, "Gbit/s",
        std::to_string(fabric.leaf_count) + " leaves x " +
            std::to_string(fabric.spine_count) + " spines x " +
            std::to_string(fabric.uplinks_per_leaf_per_spine) + " links x " +
            num(fabric.port_rate.gbit_s) + " Gbit/s / 2");
  r.add("topology.attached_gbit_s_total", audit.attached_gbit_s_total, "Gbit/s",
        "sum over endpoint and auxiliary links");
  r.add("topology.downlink_ports_demanded", static_cast<double>(audit.downlink_ports_demanded),
        "ports", "per-group quarter-port round-up");
  r.add("topology.downlink_ports_available", static_cast<double>(audit.downlink_ports_available),
        "ports",
        std::to_string(fabric.leaf_count) + " leaves x " +
            std::to_string(fabric.downlink_port_budget_per_leaf()) + " ports");
  for (const auto& sw : audit.per_switch) {
    r.add("ports." + sw.switch_name + ".used", sw.used_ports, "ports",
          std::to_string(sw.downlink_ports) + " downlink + " +
              std::to_string(sw.uplink_ports) + " uplink, " + std::to_string(sw.free_ports) +
              " free");
  }
  for (const auto& p : cluster.partitions) {
    if (!p.link) continue;
    const auto link = topo::node_effective_link(p);
    r.add("link." + p.name + ".guaranteed_gbit_s", link.guaranteed_gbit_s, "Gbit/s",
          link.note);
    r.add("link." + p.name + ".opportunistic_gbit_s", link.opportunistic_gbit_s, "Gbit/s",
          link.note);
  }
  if (cluster.measurements) {
    for (const auto& scalar : cluster.measurements->scalars) {
      if (scalar.name != "mpi_bidirectional_bandwidth" || scalar.unit != "GB/s") continue;
      const Partition* p = cluster.find_partition(cluster.measurements->partition);
      if (p == nullptr || !p->link) continue;
      const auto link = topo::node_effective_link(*p);
      const auto eff = topo::link_utilization(scalar.value, link.guaranteed_gbit_s);
      add_efficiency(r, "eff.link." + p->name, eff,
                     num(scalar.value) + " GB/s over a " + num(link.guaranteed_gbit_s) +
                         " Gbit/s guaranteed injection rate, full duplex" +
                         (scalar.source.empty() ? "" : "; " + scalar.source));
    }
  }
  r.violations.insert(r.violations.end(), audit.violations.begin(), audit.violations.end());
  return r;
}

Report storage_report(const ClusterSpec& cluster, const storage::BenchReport* bench) {
  if (!cluster.storage) {
    throw std::invalid_argument("cluster '" + cluster.name + "' has no storage section");
  }
  Report r = make_report();
  const auto summary = storage::capacity_summary(*cluster.storage);
  for (std::size_t i = 0; i < cluster.storage->pools.size(); ++i) {
    const Pool& pool = cluster.storage->pools[i];
    r.add("storage.pool." + pool.name + ".raw_bytes",
          static_cast<double>(summary.pools[i].raw_bytes), "bytes",
          std::to_string(pool.device_count) + " x " +
              std::to_string(pool.device_capacity_bytes) + " B " + to_string(pool.medium) +
              " devices");
  }
  r.add("storage.raw_bytes", static_cast<double>(summary.raw_bytes), "bytes",
        "sum over pools");
  r.add("storage.usable_bytes", static_cast<double>(summary.usable_bytes), "bytes",
        cluster.storage->filesystem_label);
  r.add("storage.usable_fraction", summary.usable_fraction, "fraction",
        "usable / raw, redundancy and filesystem overhead");
  if (!cluster.storage->servers.empty()) {
    int canisters = 0;
    for (const auto& s : cluster.storage->servers) canisters += s.canisters;
    r.add("storage.servers", static_cast<double>(cluster.storage->servers.size()), "",
          "building blocks");
    r.add("storage.canisters", canisters, "", "active server canisters");
  }
  if (bench != nullptr) {
    for (const auto& metric : bench->metrics) {
      r.add("bench." + metric.name, metric.value, storage::to_string(metric.unit),
            bench->label);
    }
  }
  return r;
}

Report pue_report(double total_energy, double it_energy, const std::string& label) {
  Report r = make_report();
  const double value = facility::pue(total_energy, it_energy);
  r.add("pue", value, "ratio",
        "total " + num(total_energy) + " / IT " + num(it_energy) +
            (label.empty() ? "" : "; " + label));
  r.add("overhead_fraction", value - 1.0, "fraction",
        "facility overhead relative to IT energy");
  return r;
}

Report compare_report(const ClusterSpec& baseline, const ClusterSpec& candidate,
                      const std::string& peak_variant) {
  Report r = make_report();
  const std::string pair = baseline.name + " -> " + candidate.name;

  if (!baseline.partitions.empty() && !candidate.partitions.empty()) {
    const Partition& pb = baseline.partitions.front();
    const Partition& pc = candidate.partitions.front();

    r.add("cores_per_node.baseline", pb.cpu.cores_per_node(), "cores",
          baseline.name + " " + pb.name + ", " + pb.cpu.model);
    r.add("cores_per_node.candidate", pc.cpu.cores_per_node(), "cores",
          candidate.name + " " + pc.name + ", " + pc.cpu.model);
    r.add("cores_per_node.ratio",
          static_cast<double>(pc.cpu.cores_per_node()) / pb.cpu.cores_per_node(), "x", pair);

    for (const auto& vc : pc.cpu.vector_variants) {
      const VectorVariant* vb = pb.cpu.find_variant(vc.name);
      if (vb == nullptr) continue;
      const auto peak_b = perf::peak_flops(pb.cpu, *vb, pb.cpu.base_frequency_ghz);
      const auto peak_c = perf::peak_flops(pc.cpu, vc, pc.cpu.base_frequency_ghz);
      r.add("peak." + vc.name + ".baseline", peak_b.tflops, "TFLOP/s",
            baseline.name + ": " + peak_provenance(peak_b));
      r.add("peak." + vc.name + ".candidate", peak_c.tflops, "TFLOP/s",
            candidate.name + ": " + peak_provenance(peak_c));
      r.add("peak." + vc.name + ".ratio", peak_c.tflops / peak_b.tflops, "x", pair);
    }

    const double membw_b = perf::peak_memory_bandwidth(pb.memory, pb.cpu.sockets_per_node);
    const double membw_c = perf::peak_memory_bandwidth(pc.memory, pc.cpu.sockets_per_node);
    r.add("membw.baseline", membw_b, "GB/s", baseline.name + ": " + membw_provenance(pb));
    r.add("membw.candidate", membw_c, "GB/s", candidate.name + ": " + membw_provenance(pc));
    r.add("membw.ratio", membw_c / membw_b, "x", pair);
  }

  int shared = 0;
  std::vector<std::string> only_baseline;
  std::vector<std::string> only_candidate;
  if (baseline.measurements && candidate.measurements) {
    for (const auto& app_c : candidate.measurements->applications) {
      const AppResult* app_b = nullptr;
      for (const auto& a : baseline.measurements->applications) {
        if (a.name == app_c.name && a.better == app_c.better && a.unit == app_c.unit) {
          app_b = &a;
          break;
        }
      }
      if (app_b == nullptr) {
        only_candidate.push_back(app_c.name);
        continue;
      }
      ++shared;
      const auto s = perf::speedup(app_b->value, app_c.value, app_c.better);
      r.add("speedup." + app_c.name, s.factor, "x",
            "baseline " + num(app_b->value) + " " + app_b->unit + " -> candidate " +
                num(app_c.value) + " " + app_c.unit + " (" +
                (app_c.better == Orientation::higher_is_better ? "higher" : "lower") +
                " is better)");
    }
    for (const auto& app_b : baseline.measurements->applications) {
      const bool matched =
          candidate.measurements->applications.end() !=
          std::find_if(candidate.measurements->applications.begin(),
                       candidate.measurements->applications.end(), [&](const AppResult& a) {
                         return a.name == app_b.name && a.better == app_b.better &&
                                a.unit == app_b.unit;
                       });
      if (!matched) only_baseline.push_back(app_b.name);
    }
  }
  std::string note = pair;
  if (!only_baseline.empty() || !only_candidate.empty()) {
    note += "; unmatched:";
    for (const auto& name : only_baseline) note += " baseline '" + name + "'";
    for (const auto& name : only_candidate) note += " candidate '" + name + "'";
  }
  r.add("applications.shared", shared, "", note);

  // Efficiency of throughput-style results against a reference peak.
  if (!baseline.partitions.empty() && !candidate.partitions.empty()) {
    auto add_app_efficiency = [&](const ClusterSpec& cluster, const char* side) {
      if (!cluster.measurements) return;
      const Partition& p = cluster.partitions.front();
      const VectorVariant* v = peak_variant.empty()
                                   ? default_peak_variant(p.cpu)
                                   : p.cpu.find_variant(peak_variant);
      if (v == nullptr) return;
      const double peak_gf =
          perf::peak_flops(p.cpu, *v, p.cpu.base_frequency_ghz).tflops * 1000.0;
      for (const auto& app : cluster.measurements->applications) {
        if (app.unit != "GFLOP/s") continue;
        r.add("app_efficiency." + app.name + "." + side, app.value / peak_gf, "fraction",
              cluster.name + ": " + num(app.value) + " GFLOP/s / " + num(peak_gf) +
                  " GFLOP/s peak (" + v->name + " at base frequency)");
      }
    };
    add_app_efficiency(baseline, "baseline");
    add_app_efficiency(candidate, "candidate");
  }
  return r;
}

Report full_report(const ClusterSpec& cluster, const storage::BenchReport* bench) {
  Report r = make_report();

  // Inventory.
  r.add("nodes.total", static_cast<double>(total_nodes(cluster)), "nodes",
        "sum of partition node counts");
  r.add("cores.total", static_cast<double>(total_cores(cluster)), "cores",
        "sum of node_count x sockets x cores per socket");
  for (const auto& p : cluster.partitions) {
    r.add("nodes." + p.name, static_cast<double>(p.node_count), "nodes",
          p.active_nodes ? "installed; " + std::to_string(*p.active_nodes) + " active"
                         : "installed");
    r.add("cores." + p.name,
          static_cast<double>(p.node_count * static_cast<std::uint64_t>(p.cpu.cores_per_node())),
          "cores",
          std::to_string(p.node_count) + " nodes x " + std::to_string(p.cpu.cores_per_node()) +
              " cores (" + p.cpu.model + ")");
  }

  // Node peaks at base frequency.
  for (const auto& p : cluster.partitions) {
    for (const auto& v : p.cpu.vector_variants) {
      const auto row = perf::peak_flops(p.cpu, v, p.cpu.base_frequency_ghz);
      r.add("peak." + p.name + "." + v.name, row.tflops, "TFLOP/s", peak_provenance(row));
    }
    r.add("membw." + p.name, perf::peak_memory_bandwidth(p.memory, p.cpu.sockets_per_node),
          "GB/s", membw_provenance(p));
  }

  // Cache latencies at base frequency.
  for (const auto& p : cluster.partitions) {
    for (const auto& cache : p.cpu.caches) {
      auto add_latency = [&](const char* which, const std::optional<Range>& range) {
        if (!range) return;
        const std::string base = "latency." + p.name + "." + cache.level + "." + which;
        const std::string prov = "cycles at " + num(p.cpu.base_frequency_ghz) + " GHz base";
        r.add(base + ".low_ns",
              perf::cache_latency_ns(range->low, p.cpu.base_frequency_ghz), "ns",
              num(range->low) + " " + prov);
        if (range->high != range->low) {
          r.add(base + ".high_ns",
                perf::cache_latency_ns(range->high, p.cpu.base_frequency_ghz), "ns",
                num(range->high) + " " + prov);
        }
      };
      add_latency("documented", cache.latency_cycles_documented);
      add_latency("measured", cache.latency_cycles_measured);
    }
  }

  // Accelerators.
  for (const auto& p : cluster.partitions) {
    for (const auto& group : p.accelerators) {
      r.add("accel." + group.spec.model + ".installed",
            static_cast<double>(p.effective_nodes() * static_cast<std::uint64_t>(group.per_node)),
            "devices",
            std::to_string(p.effective_nodes()) + " active nodes x " +
                std::to_string(group.per_node));
      add_accelerator_findings(r, p, group);
    }
  }

  // Measured vs. theoretical.
  if (cluster.measurements) {
    const MeasurementSet& m = *cluster.measurements;
    const Partition* p = m.partition.empty() ? nullptr : cluster.find_partition(m.partition);
    if (p != nullptr) {
      for (const auto& run : m.flops_runs) {
        const VectorVariant* v = p->cpu.find_variant(run.variant);
        if (v == nullptr) continue;
        const auto eff =
            perf::flops_efficiency(run.tflops, p->cpu, *v, run.observed_frequency_ghz);
        add_efficiency(r, "eff.flops." + run.variant, eff,
                       "at observed " + num(run.observed_frequency_ghz) + " GHz" +
                           (run.source.empty() ? "" : "; " + run.source));
      }
      const double membw = perf::peak_memory_bandwidth(p->memory, p->cpu.sockets_per_node);
      for (const auto& run : m.stream_runs) {
        const auto eff = perf::bandwidth_efficiency(run.gb_s, membw);
        add_efficiency(r, "eff.stream." + run.numa_mode, eff,
                       run.numa_mode + (run.source.empty() ? "" : "; " + run.source));
      }
      const VectorVariant* ref = default_peak_variant(p->cpu);
      for (const auto& app : m.applications) {
        r.add("app." + app.name, app.value, app.unit,
              std::string(app.better == Orientation::higher_is_better ? "higher" : "lower") +
                  " is better" + (app.source.empty() ? "" : "; " + app.source));
        if (ref != nullptr && app.unit == "GFLOP/s") {
          const double peak_gf =
              perf::peak_flops(p->cpu, *ref, p->cpu.base_frequency_ghz).tflops * 1000.0;
          r.add("eff.app." + app.name, app.value / peak_gf, "fraction",
                "vs " + ref->name + " peak at base frequency (" + num(peak_gf) +
                    " GFLOP/s)");
        }
      }
    }
    for (const auto& x : m.xbtest) {
      const MemorySystem* mem = nullptr;
      for (const auto& part : cluster.partitions) {
        for (const auto& group : part.accelerators) {
          if (group.spec.model == x.accelerator_model) {
            if (const MemorySystem* found = group.spec.find_memory(x.memory_label)) {
              mem = found;
            }
          }
        }
      }
      if (mem == nullptr) continue;
      for (const auto& mode : perf::xbtest_modes(mem->peak_bandwidth_gb_s, x.mode_fractions)) {
        r.add("xbtest." + x.accelerator_model + "." + x.memory_label + ".mode" +
                  std::to_string(mode.mode) + "_gb_s",
              mode.implied_gb_s, "GB/s",
              mode.label + ": " + num(mode.fraction) + " of " +
                  num(mem->peak_bandwidth_gb_s) + " GB/s peak" +
                  (x.source.empty() ? "" : "; " + x.source));
      }
    }
    for (const auto& scalar : m.scalars) {
      r.add("scalar." + scalar.name, scalar.value, scalar.unit, scalar.source);
    }
  }

  // Topology and storage sections reuse their dedicated builders.
  if (cluster.fabric) append(r, topology_report(cluster));
  if (cluster.storage) append(r, storage_report(cluster, bench));

  // Facility.
  const auto envelope = facility::it_power_envelope(cluster);
  r.add("power.it_upper_watts", envelope.upper_watts, "W",
        "sum of socket and accelerator TDPs, all partitions");
  r.add("power.it_lower_watts", envelope.lower_watts, "W",
        "idle fraction " + num(envelope.idle_fraction) + " of the upper bound");
  for (const auto& part : envelope.breakdown) {
    r.add("power." + part.partition + "_watts", part.total_watts(), "W",
          "cpu " + num(part.cpu_watts) + " W + accelerators " + num(part.accelerator_watts) +
              " W");
  }
  double assumed_pue = 1.0;
  std::string pue_note = "no metering sample; assuming PUE 1";
  if (cluster.measurements && cluster.measurements->pue_sample) {
    assumed_pue = facility::pue(*cluster.measurements->pue_sample);
    pue_note = "measured over " + cluster.measurements->pue_sample->period_label;
    r.add("pue.measured", assumed_pue, "ratio", pue_note);
  }
  if (cluster.facility) {
    const auto head = facility::headroom(cluster, *cluster.facility, assumed_pue);
    r.add("power.required_watts", head.required_watts, "W",
          "IT envelope x PUE " + num(assumed_pue) + "; " + pue_note);
    r.add("power.capacity_watts", head.capacity_watts, "W", "electrical capacity");
    r.add("power.fraction_of_capacity", head.fraction_of_capacity, "fraction",
          "required / capacity");
    r.add("power.fits", head.fits ? 1.0 : 0.0, "bool",
          head.fits ? "required power fits the electrical capacity"
                    : "required power exceeds the electrical capacity");
    if (cluster.facility->planned_capacity_watts) {
      r.add("power.planned_capacity_watts", *cluster.facility->planned_capacity_watts, "W",
            "planned expansion");
    }
  }
  return r;
}

}  // namespace hpcmodel::analysis
