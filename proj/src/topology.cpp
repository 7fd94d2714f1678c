#include "hpcmodel/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hpcmodel/errors.hpp"

namespace hpcmodel::topo {

namespace {

// Ports are allocated in quarters: an NDR800-class port splits into two
// half-rate or four quarter-rate links with breakout cables. A link at (or
// above) the port rate consumes whole ports.
std::uint64_t quarters_per_link(double link_gbit_s, double port_gbit_s) {
  if (port_gbit_s <= 0.0) throw std::invalid_argument("fabric port rate must be positive");
  const double q = 4.0 * link_gbit_s / port_gbit_s;
  return static_cast<std::uint64_t>(std::ceil(q - 1e-9));
}

std::uint64_t ports_for_quarters(std::uint64_t quarters) { return (quarters + 3) / 4; }

// A homogeneous set of endpoint links to spread over the leaves.
struct LinkGroup {
  std::string name;
  std::uint64_t members = 0;  // blades (or single links for auxiliaries)
  std::uint64_t links_per_member = 1;
  double rate_gbit_s = 0.0;
};

// Balanced distribution: member count on leaf `i` of `leaves`.
std::uint64_t members_on_leaf(std::uint64_t members, int leaves, int i) {
  const std::uint64_t base = members / static_cast<std::uint64_t>(leaves);
  const std::uint64_t extra = members % static_cast<std::uint64_t>(leaves);
  return base + (static_cast<std::uint64_t>(i) < extra ? 1 : 0);
}

std::vector<LinkGroup> link_groups(const FabricSpec& fabric, const ClusterSpec& cluster) {
  std::vector<LinkGroup> groups;
  for (std::size_t i = 0; i < fabric.endpoint_attachments.size(); ++i) {
    const auto& att = fabric.endpoint_attachments[i];
    if (cluster.find_partition(att.partition) == nullptr) {
      throw ValidationError("fabric.endpoint_attachments[" + std::to_string(i) + "].partition",
                            "references unknown partition '" + att.partition + "'");
    }
    groups.push_back({att.partition, att.blades,
                      static_cast<std::uint64_t>(att.links_per_blade), att.rate.gbit_s});
  }
  for (const auto& aux : fabric.auxiliary_attachments) {
    groups.push_back({aux.name, static_cast<std::uint64_t>(aux.links), 1, aux.rate.gbit_s});
  }
  return groups;
}

}  // namespace

FabricReport audit_fabric(const FabricSpec& fabric, const ClusterSpec& cluster) {
  FabricReport report;
  const auto groups = link_groups(fabric, cluster);

  const int uplinks = fabric.uplink_ports_per_leaf();
  report.uplink_gbit_s_per_leaf = static_cast<double>(uplinks) * fabric.port_rate.gbit_s;
  report.downlink_budget_gbit_s_per_leaf =
      static_cast<double>(fabric.downlink_port_budget_per_leaf()) * fabric.port_rate.gbit_s;
  report.bisection_gbit_s = bisection_bandwidth(fabric);

  // Aggregate demand: whole ports per group, attached bandwidth exact.
  for (const auto& g : groups) {
    const std::uint64_t links = g.members * g.links_per_member;
    const std::uint64_t quarters = links * quarters_per_link(g.rate_gbit_s, fabric.port_rate.gbit_s);
    report.downlink_ports_demanded += ports_for_quarters(quarters);
    report.attached_gbit_s_total += static_cast<double>(links) * g.rate_gbit_s;
  }
  report.downlink_ports_available =
      static_cast<std::uint64_t>(fabric.leaf_count) *
      static_cast<std::uint64_t>(std::max(fabric.downlink_port_budget_per_leaf(), 0));

  if (uplinks > 0) {
    report.blocking_port_basis =
        static_cast<double>(fabric.switch_radix - uplinks) / static_cast<double>(uplinks);
    const double uplink_total =
        static_cast<double>(fabric.leaf_count) * report.uplink_gbit_s_per_leaf;
    report.blocking_attached_basis =
        uplink_total > 0.0 ? report.attached_gbit_s_total / uplink_total : 0.0;
  } else {
    report.violations.push_back("fabric: leaves have no uplink ports");
  }

  if (uplinks > fabric.switch_radix) {
    report.violations.push_back("fabric: " + std::to_string(uplinks) +
                                " uplink ports exceed the leaf radix " +
                                std::to_string(fabric.switch_radix));
  }
  if (report.downlink_ports_demanded > report.downlink_ports_available) {
    report.violations.push_back(
        "fabric: endpoints demand " + std::to_string(report.downlink_ports_demanded) +
        " downlink ports but only " + std::to_string(report.downlink_ports_available) +
        " exist across " + std::to_string(fabric.leaf_count) + " leaves");
  }

  // Per-leaf usage under balanced placement, grouped by rate class so
  // breakout ports are shared within a class but not across classes.
  for (int leaf = 0; leaf < fabric.leaf_count; ++leaf) {
    std::map<double, std::uint64_t> quarters_by_rate;
    for (const auto& g : groups) {
      const std::uint64_t members = members_on_leaf(g.members, fabric.leaf_count, leaf);
      const std::uint64_t links = members * g.links_per_member;
      quarters_by_rate[g.rate_gbit_s] +=
          links * quarters_per_link(g.rate_gbit_s, fabric.port_rate.gbit_s);
    }
    std::uint64_t downlink_ports = 0;
    for (const auto& [rate, quarters] : quarters_by_rate) {
      downlink_ports += ports_for_quarters(quarters);
    }
    PortUsage usage;
    usage.switch_name = "leaf-" + std::to_string(leaf);
    usage.uplink_ports = uplinks;
    usage.downlink_ports = static_cast<int>(downlink_ports);
    usage.used_ports = uplinks + usage.downlink_ports;
    usage.free_ports = fabric.switch_radix - usage.used_ports;
    if (usage.used_ports > fabric.switch_radix) {
      report.violations.push_back(
          usage.switch_name + ": " + std::to_string(usage.downlink_ports) +
          " downlink + " + std::to_string(uplinks) + " uplink ports exceed the radix " +
          std::to_string(fabric.switch_radix));
    }
    report.per_switch.push_back(std::move(usage));
  }

  const long long spine_ports =
      static_cast<long long>(fabric.leaf_count) * fabric.uplinks_per_leaf_per_spine;
  for (int spine = 0; spine < fabric.spine_count; ++spine) {
    PortUsage usage;
    usage.switch_name = "spine-" + std::to_string(spine);
    usage.uplink_ports = 0;
    usage.downlink_ports = static_cast<int>(spine_ports);
    usage.used_ports = usage.downlink_ports;
    usage.free_ports = fabric.switch_radix - usage.used_ports;
    if (spine_ports > fabric.switch_radix) {
      report.violations.push_back(usage.switch_name + ": " + std::to_string(spine_ports) +
                                  " leaf links exceed the radix " +
                                  std::to_string(fabric.switch_radix));
    }
    report.per_switch.push_back(std::move(usage));
  }
  return report;
}

double blocking_factor(const FabricSpec& fabric, const ClusterSpec& cluster,
                       BlockingBasis basis) {
  const int uplinks = fabric.uplink_ports_per_leaf();
  if (uplinks <= 0 || fabric.port_rate.gbit_s <= 0.0) {
    throw std::invalid_argument("blocking_factor: fabric has zero uplink bandwidth");
  }
  if (basis == BlockingBasis::port_budget) {
    return static_cast<double>(fabric.switch_radix - uplinks) / static_cast<double>(uplinks);
  }
  double attached = 0.0;
  for (const auto& g : link_groups(fabric, cluster)) {
    attached += static_cast<double>(g.members * g.links_per_member) * g.rate_gbit_s;
  }
  const double uplink_total = static_cast<double>(fabric.leaf_count) *
                              static_cast<double>(uplinks) * fabric.port_rate.gbit_s;
  return attached / uplink_total;
}

double bisection_bandwidth(const FabricSpec& fabric) {
  return static_cast<double>(fabric.leaf_count) * fabric.spine_count *
         fabric.uplinks_per_leaf_per_spine * fabric.port_rate.gbit_s / 2.0;
}

int hop_count(const FabricSpec& fabric, int leaf_a, int leaf_b) {
  if (leaf_a < 0 || leaf_a >= fabric.leaf_count || leaf_b < 0 || leaf_b >= fabric.leaf_count) {
    throw std::out_of_range("hop_count: leaf index outside [0, " +
                            std::to_string(fabric.leaf_count) + ")");
  }
  return leaf_a == leaf_b ? 2 : 4;
}

NodeLink node_effective_link(const Partition& partition) {
  if (!partition.link) {
    throw std::invalid_argument("node_effective_link: partition '" + partition.name +
                                "' declares no fabric link");
  }
  const auto& link = *partition.link;
  const double blade_gbit_s = static_cast<double>(link.links_per_blade) * link.rate.gbit_s;
  NodeLink result;
  if (link.shared_io && partition.nodes_per_blade == 2) {
    result.guaranteed_gbit_s = blade_gbit_s / 2.0;
    result.opportunistic_gbit_s = blade_gbit_s;
    result.note = "two nodes share one " + link.rate.label +
                  " adapter: half rate guaranteed, full rate when the neighbour is idle";
  } else {
    result.guaranteed_gbit_s = blade_gbit_s;
    result.opportunistic_gbit_s = blade_gbit_s;
    result.note = "dedicated " + link.rate.label + " adapter";
  }
  return result;
}

perf::EfficiencyResult link_utilization(double measured_bidirectional_gb_s,
                                        double node_rate_gbit_s) {
  if (node_rate_gbit_s <= 0.0) {
    throw std::invalid_argument("link_utilization: node rate must be positive");
  }
  // Full-duplex ceiling: both directions together move 2 * rate Gbit/s.
  const double theoretical_gb_s = 2.0 * node_rate_gbit_s / 8.0;
  return perf::bandwidth_efficiency(measured_bidirectional_gb_s, theoretical_gb_s);
}

}  // namespace hpcmodel::topo
