#pragma once

#include <string>
#include <vector>

#include "hpcmodel/model.hpp"
#include "hpcmodel/perf.hpp"
#include "hpcmodel/report.hpp"
#include "hpcmodel/storage.hpp"

// Report assembly shared by the command-line tool and the test suite. Each
// builder fills tool_version and findings; the caller adds command and input
// records before rendering.
namespace hpcmodel::analysis {

struct PeakQuery {
  std::string partition;       // empty: first partition
  std::string variant;         // empty: every variant of the selected CPU
  double frequency_ghz = 0.0;  // <= 0: base frequency

  bool operator==(const PeakQuery&) const = default;
};

// Rows of the peak table, one per selected variant. Throws
// std::invalid_argument for unknown partition or variant names.
std::vector<perf::PeakFlopsResult> peak_rows(const ClusterSpec& cluster, const PeakQuery& query);

report::Report peak_report(const ClusterSpec& cluster, const PeakQuery& query = {});

// Model invariants plus, when a fabric is present, the fat-tree audit.
report::Report validation_report(const ClusterSpec& cluster);

// Throws std::invalid_argument if the cluster has no fabric section.
report::Report topology_report(const ClusterSpec& cluster);

// Throws std::invalid_argument if the cluster has no storage section.
report::Report storage_report(const ClusterSpec& cluster,
                              const storage::BenchReport* bench = nullptr);

report::Report pue_report(double total_energy, double it_energy, const std::string& label);

// Side-by-side peaks, memory bandwidths, and measured-application speedups
// (candidate over baseline, matched by exact name and orientation).
// `peak_variant` selects the reference peak for efficiency-style ratios;
// empty picks the widest FMA-only variant.
report::Report compare_report(const ClusterSpec& baseline, const ClusterSpec& candidate,
                              const std::string& peak_variant = {});

// Everything derivable from one spec: inventory, peaks, memory, caches,
// accelerators, topology, storage, facility, plus measured-vs-theoretical
// efficiencies when measurements are present.
report::Report full_report(const ClusterSpec& cluster,
                           const storage::BenchReport* bench = nullptr);

// Widest variant whose name marks it as FMA-only (no "+ADD" style suffix);
// nullptr when the CPU declares no variants.
const VectorVariant* default_peak_variant(const CpuSpec& cpu);

}  // namespace hpcmodel::analysis
