// Python bindings: a thin surface over the analysis core. Cluster objects are
// opaque handles; operations take partition/variant names and return plain
// results, so the Python side never mutates model state.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>

#include "hpcmodel/analysis.hpp"
#include "hpcmodel/errors.hpp"
#include "hpcmodel/facility.hpp"
#include "hpcmodel/json_io.hpp"
#include "hpcmodel/model.hpp"
#include "hpcmodel/perf.hpp"
#include "hpcmodel/report.hpp"
#include "hpcmodel/storage.hpp"
#include "hpcmodel/topology.hpp"
#include "hpcmodel/version.hpp"

namespace py = pybind11;
using namespace hpcmodel;

namespace {

const Partition& select_partition(const ClusterSpec& cluster, const std::string& name) {
  if (cluster.partitions.empty()) {
    throw std::invalid_argument("cluster has no partitions");
  }
  if (name.empty()) return cluster.partitions.front();
  const Partition* partition = cluster.find_partition(name);
  if (partition == nullptr) {
    throw std::invalid_argument("unknown partition: " + name);
  }
  return *partition;
}

const FabricSpec& require_fabric(const ClusterSpec& cluster) {
  if (!cluster.fabric) {
    throw std::invalid_argument("cluster description has no fabric section");
  }
  return *cluster.fabric;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Analytical modeling of HPC cluster capacity and performance";
#ifdef HPCMODEL_VERSION_INFO
  m.attr("__version__") = HPCMODEL_VERSION_INFO;
#else
  m.attr("__version__") = kVersion;
#endif

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<ClusterSpec>(m, "Cluster")
      .def_readonly("name", &ClusterSpec::name)
      .def_property_readonly("partition_names",
                             [](const ClusterSpec& cluster) {
                               std::vector<std::string> names;
                               names.reserve(cluster.partitions.size());
                               for (const auto& partition : cluster.partitions) {
                                 names.push_back(partition.name);
                               }
                               return names;
                             })
      .def("total_nodes", [](const ClusterSpec& cluster) { return total_nodes(cluster); })
      .def("total_cores", [](const ClusterSpec& cluster) { return total_cores(cluster); })
      .def("has_fabric", [](const ClusterSpec& cluster) { return cluster.fabric.has_value(); })
      .def("has_storage", [](const ClusterSpec& cluster) { return cluster.storage.has_value(); })
      .def("__repr__", [](const ClusterSpec& cluster) {
        return "<Cluster '" + cluster.name + "', " +
               std::to_string(cluster.partitions.size()) + " partitions>";
      });

  py::class_<perf::PeakFlopsResult>(m, "PeakRow")
      .def_readonly("variant", &perf::PeakFlopsResult::variant_name)
      .def_readonly("tflops", &perf::PeakFlopsResult::tflops)
      .def_property_readonly(
          "cores",
          [](const perf::PeakFlopsResult& row) {
            return row.inputs.sockets * row.inputs.cores_per_socket;
          })
      .def_property_readonly(
          "frequency_ghz",
          [](const perf::PeakFlopsResult& row) { return row.inputs.frequency_ghz; })
      .def("__repr__", [](const perf::PeakFlopsResult& row) {
        return "<PeakRow " + row.variant_name + ": " + std::to_string(row.tflops) + " TFLOP/s>";
      });

  py::class_<perf::HbmBandwidthResult>(m, "HbmBandwidth")
      .def_readonly("bits_per_transaction", &perf::HbmBandwidthResult::bits_per_transaction)
      .def_readonly("bytes_per_transaction", &perf::HbmBandwidthResult::bytes_per_transaction)
      .def_readonly("mb_s", &perf::HbmBandwidthResult::mb_s)
      .def_readonly("gb_s", &perf::HbmBandwidthResult::gb_s);

  py::class_<storage::BenchMetric>(m, "BenchMetric")
      .def_readonly("name", &storage::BenchMetric::name)
      .def_readonly("value", &storage::BenchMetric::value)
      .def_property_readonly(
          "unit", [](const storage::BenchMetric& metric) { return to_string(metric.unit); })
      .def("__eq__", [](const storage::BenchMetric& a, const storage::BenchMetric& b) {
        return a == b;
      });

  py::class_<storage::BenchReport>(m, "BenchReport")
      .def_readonly("label", &storage::BenchReport::label)
      .def_readonly("metrics", &storage::BenchReport::metrics)
      .def("find",
           [](const storage::BenchReport& report, const std::string& name) -> py::object {
             const storage::BenchMetric* metric = report.find(name);
             if (metric == nullptr) return py::none();
             return py::cast(*metric);
           })
      .def("__eq__", [](const storage::BenchReport& a, const storage::BenchReport& b) {
        return a == b;
      });

  m.def(
      "load",
      [](const std::string& path, bool lenient, bool skip_validation) {
        return load_cluster(path, LoadOptions{lenient, skip_validation});
      },
      py::arg("path"), py::arg("lenient") = false, py::arg("skip_validation") = false,
      "Load and validate a cluster description from a JSON file.");
  m.def(
      "parse",
      [](const std::string& text, bool lenient, bool skip_validation) {
        return parse_cluster(text, LoadOptions{lenient, skip_validation});
      },
      py::arg("text"), py::arg("lenient") = false, py::arg("skip_validation") = false,
      "Parse and validate a cluster description from a JSON string.");
  m.def("serialize", &serialize_cluster, py::arg("cluster"),
        "Serialize a cluster description back to canonical JSON.");
  m.def(
      "save",
      [](const ClusterSpec& cluster, const std::string& path) { save_cluster(cluster, path); },
      py::arg("cluster"), py::arg("path"));
  m.def(
      "validate", [](const ClusterSpec& cluster) { return collect_violations(cluster); },
      py::arg("cluster"), "All semantic-invariant violations, empty when the model is valid.");

  m.def(
      "peak",
      [](const ClusterSpec& cluster, const std::string& partition, const std::string& variant,
         double frequency) {
        return analysis::peak_rows(cluster, {partition, variant, frequency});
      },
      py::arg("cluster"), py::arg("partition") = "", py::arg("variant") = "",
      py::arg("frequency") = 0.0,
      "Theoretical peak rows for a partition (default: first partition, all "
      "variants, base frequency).");
  m.def(
      "peak_memory_bandwidth",
      [](const ClusterSpec& cluster, const std::string& partition) {
        const Partition& selected = select_partition(cluster, partition);
        return perf::peak_memory_bandwidth(selected.memory, selected.cpu.sockets_per_node);
      },
      py::arg("cluster"), py::arg("partition") = "",
      "Node peak DRAM bandwidth in GB/s for a partition.");
  m.def(
      "hbm_peak_bandwidth",
      [](int stacks, int channels_per_stack, int pseudo_channels_per_channel,
         int bits_per_pseudo_channel, double controller_clock_mhz, int data_rate_multiplier) {
        HbmConfig hbm;
        hbm.stacks = stacks;
        hbm.channels_per_stack = channels_per_stack;
        hbm.pseudo_channels_per_channel = pseudo_channels_per_channel;
        hbm.bits_per_pseudo_channel = bits_per_pseudo_channel;
        hbm.controller_clock_mhz = controller_clock_mhz;
        hbm.data_rate_multiplier = data_rate_multiplier;
        return perf::hbm_peak_bandwidth(hbm);
      },
      py::arg("stacks"), py::arg("channels_per_stack"), py::arg("pseudo_channels_per_channel") = 2,
      py::arg("bits_per_pseudo_channel") = 64, py::arg("controller_clock_mhz") = 0.0,
      py::arg("data_rate_multiplier") = 2,
      "Peak HBM bandwidth from the memory-controller layout.");
  m.def("ddr_bandwidth", &perf::ddr_bandwidth, py::arg("transfer_rate_mt_s"),
        py::arg("bytes_per_transfer"), py::arg("channels") = 1,
        "DDR bandwidth in GB/s from MT/s and bus width.");

  m.def(
      "blocking_factor",
      [](const ClusterSpec& cluster, const std::string& basis) {
        const FabricSpec& fabric = require_fabric(cluster);
        topo::BlockingBasis selected;
        if (basis == "port") {
          selected = topo::BlockingBasis::port_budget;
        } else if (basis == "attached") {
          selected = topo::BlockingBasis::attached;
        } else {
          throw std::invalid_argument("basis must be 'port' or 'attached', got '" + basis + "'");
        }
        return topo::blocking_factor(fabric, cluster, selected);
      },
      py::arg("cluster"), py::arg("basis") = "port",
      "Fat-tree over-subscription factor ('port' or 'attached' basis).");
  m.def(
      "bisection_bandwidth",
      [](const ClusterSpec& cluster) {
        return topo::bisection_bandwidth(require_fabric(cluster));
      },
      py::arg("cluster"), "Bisection bandwidth of the fat tree in Gbit/s.");

  m.def(
      "storage_summary",
      [](const ClusterSpec& cluster) {
        if (!cluster.storage) {
          throw std::invalid_argument("cluster description has no storage section");
        }
        const storage::CapacitySummary summary = storage::capacity_summary(*cluster.storage);
        py::dict pools;
        for (const auto& pool : summary.pools) {
          pools[py::str(pool.name)] = pool.raw_bytes;
        }
        py::dict result;
        result["raw_bytes"] = summary.raw_bytes;
        result["usable_bytes"] = summary.usable_bytes;
        result["usable_fraction"] = summary.usable_fraction;
        result["pools"] = pools;
        return result;
      },
      py::arg("cluster"), "Raw and usable storage capacity, per pool and total.");

  m.def(
      "pue", [](double total, double it) { return facility::pue(total, it); }, py::arg("total"),
      py::arg("it"), "Power usage effectiveness: total energy over IT energy.");

  m.def(
      "parse_bench",
      [](const std::string& text, const std::string& default_label) {
        return storage::parse_bench(text, default_label);
      },
      py::arg("text"), py::arg("default_label") = "",
      "Parse 'name value unit' benchmark lines (GB/s and kIOPS).");
  m.def(
      "load_bench", [](const std::string& path) { return storage::load_bench(path); },
      py::arg("path"));
  m.def("format_bench", &storage::format_bench, py::arg("report"),
        "Canonical rendering; parse_bench(format_bench(r)) == r.");

  m.def(
      "report_json",
      [](const ClusterSpec& cluster, const std::string& io500_path, const std::string& command) {
        std::optional<storage::BenchReport> bench;
        if (!io500_path.empty()) bench = storage::load_bench(io500_path);
        report::Report rep = analysis::full_report(cluster, bench ? &*bench : nullptr);
        rep.command = command;
        return report::to_machine_json(rep);
      },
      py::arg("cluster"), py::arg("io500_path") = "", py::arg("command") = "",
      "Consolidated machine-readable report as a deterministic JSON string.");
}
