#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpcmodel/model.hpp"
#include "hpcmodel/perf.hpp"

namespace hpcmodel::topo {

enum class BlockingBasis {
  // (radix - uplink ports) / uplink ports: the budget if every downlink port
  // were populated at the switch port rate.
  port_budget,
  // Attached endpoint bandwidth / uplink bandwidth, aggregated over all
  // leaves (leaves need not be identical).
  attached,
};

struct PortUsage {
  std::string switch_name;
  int uplink_ports = 0;
  int downlink_ports = 0;
  int used_ports = 0;
  int free_ports = 0;

  bool operator==(const PortUsage&) const = default;
};

struct FabricReport {
  double uplink_gbit_s_per_leaf = 0.0;
  double downlink_budget_gbit_s_per_leaf = 0.0;  // port-budget basis
  double attached_gbit_s_total = 0.0;
  double blocking_port_basis = 0.0;
  double blocking_attached_basis = 0.0;
  double bisection_gbit_s = 0.0;
  std::uint64_t downlink_ports_demanded = 0;  // whole ports, per-group round-up
  std::uint64_t downlink_ports_available = 0;
  std::vector<PortUsage> per_switch;  // leaves first, then spines
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Port/bandwidth audit of a two-level fat tree. Endpoint links narrower than
// the switch port rate are accounted in quarter-port units (breakout cables
// split one port into two or four), rounded up to whole ports per attachment
// group and per rate class on each leaf. Blades are distributed over leaves
// round-robin. Dangling partition references throw ValidationError; capacity
// overruns are reported as violations, not exceptions.
FabricReport audit_fabric(const FabricSpec& fabric, const ClusterSpec& cluster);

// Over-subscription factor; an empty fabric has attached-basis blocking 0.
// Throws std::invalid_argument if the uplink bandwidth is zero.
double blocking_factor(const FabricSpec& fabric, const ClusterSpec& cluster, BlockingBasis basis);

// leaf_count * spine_count * uplinks_per_leaf_per_spine * port_rate / 2.
double bisection_bandwidth(const FabricSpec& fabric);

// Switch hops between nodes on the given leaves (0-based): 2 within a leaf,
// 4 across leaves. Throws std::out_of_range for invalid leaf indices.
int hop_count(const FabricSpec& fabric, int leaf_a, int leaf_b);

struct NodeLink {
  double guaranteed_gbit_s = 0.0;     // minimum under full blade contention
  double opportunistic_gbit_s = 0.0;  // available when blade peers are idle
  std::string note;

  bool operator==(const NodeLink&) const = default;
};

// Effective per-node injection rate, halved under a shared blade adapter.
// Throws std::invalid_argument if the partition declares no link.
NodeLink node_effective_link(const Partition& partition);

// Measured unidirectional-equivalent throughput (GB/s, both directions
// summed) against the node injection rate (Gbit/s, per direction, doubled
// for full duplex). Throws std::invalid_argument on nonpositive rates.
perf::EfficiencyResult link_utilization(double measured_bidirectional_gb_s,
                                        double node_rate_gbit_s);

}  // namespace hpcmodel::topo
