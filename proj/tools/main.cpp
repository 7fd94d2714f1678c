// Command-line front end: loads cluster descriptions, runs the analyses, and
// renders either aligned text tables or deterministic machine-readable JSON.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hpcmodel/analysis.hpp"
#include "hpcmodel/errors.hpp"
#include "hpcmodel/facility.hpp"
#include "hpcmodel/json_io.hpp"
#include "hpcmodel/model.hpp"
#include "hpcmodel/perf.hpp"
#include "hpcmodel/report.hpp"
#include "hpcmodel/storage.hpp"
#include "hpcmodel/topology.hpp"
#include "hpcmodel/units.hpp"
#include "hpcmodel/version.hpp"

namespace {

using namespace hpcmodel;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;  // semantic/analysis violation
constexpr int kExitInput = 2;      // unreadable or malformed input

// Thrown by command handlers to unwind with a specific exit code.
struct CommandError {
  int code;
  std::string message;
};

std::string join_command(int argc, char** argv) {
  std::string joined = std::filesystem::path(argv[0]).filename().string();
  for (int i = 1; i < argc; ++i) {
    joined += ' ';
    joined += argv[i];
  }
  return joined;
}

std::string format_number(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 9e15) {
    return std::to_string(static_cast<long long>(value));
  }
  return report::format_significant(value, 6);
}

ClusterSpec load_spec(const std::string& path, const LoadOptions& options) {
  try {
    return load_cluster(path, options);
  } catch (const ValidationError& e) {
    throw CommandError{kExitViolation, e.what()};
  } catch (const ParseError& e) {
    throw CommandError{kExitInput, e.what()};
  }
}

storage::BenchReport load_bench_file(const std::string& path) {
  try {
    return storage::load_bench(path);
  } catch (const ParseError& e) {
    throw CommandError{kExitInput, e.what()};
  }
}

report::InputRecord make_input(const std::string& path) {
  try {
    return {path, report::digest_file(path)};
  } catch (const ParseError& e) {
    throw CommandError{kExitInput, e.what()};
  }
}

// ---------------------------------------------------------------------------
// Table rendering
// ---------------------------------------------------------------------------

void print_aligned(const std::vector<std::vector<std::string>>& rows,
                   const std::vector<bool>& right_align) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const bool last = c + 1 == row.size();
      const bool right = c < right_align.size() && right_align[c];
      const std::size_t pad = widths[c] - row[c].size();
      if (right) line += std::string(pad, ' ');
      line += row[c];
      if (!last) {
        if (!right) line += std::string(pad, ' ');
        line += "  ";
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::printf("%s\n", line.c_str());
  }
}

std::string value_cell(const report::Finding& finding) {
  std::string cell = format_number(finding.value);
  if (finding.unit == "bytes" && finding.value >= 0 && finding.value == std::floor(finding.value)) {
    cell += " (" + units::human_bytes(static_cast<std::uint64_t>(finding.value)) + ")";
  }
  return cell;
}

void print_findings_table(const report::Report& rep) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Key", "Value", "Unit", "Note"});
  for (const auto& finding : rep.findings) {
    rows.push_back({finding.key, value_cell(finding), finding.unit, finding.provenance});
  }
  print_aligned(rows, {false, true, false, false});
  if (!rep.violations.empty()) {
    std::printf("\nViolations:\n");
    for (const auto& violation : rep.violations) {
      std::printf("  - %s\n", violation.c_str());
    }
  }
}

// Mirrors the layout used for theoretical-peak tables: performance is printed
// truncated (not rounded) to three decimals.
std::string truncate3(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3f", std::floor(value * 1000.0) / 1000.0);
  return buffer;
}

void print_peak_table(const std::vector<perf::PeakFlopsResult>& rows) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Cores", "Freq. [GHz]", "Exec. Units", "Ele.", "Op.",
                   "Performance [TFLOP/s]", "Variant"});
  for (const auto& row : rows) {
    char freq[32];
    std::snprintf(freq, sizeof(freq), "%.2f", row.inputs.frequency_ghz);
    table.push_back({std::to_string(row.inputs.sockets * row.inputs.cores_per_socket),
                     freq,
                     std::to_string(row.inputs.execution_units),
                     std::to_string(row.inputs.elements_per_vector),
                     std::to_string(row.inputs.operations_per_element),
                     truncate3(row.tflops),
                     row.variant_name});
  }
  print_aligned(table, {true, true, true, true, true, true, false});
}

void print_port_table(const topo::FabricReport& audit) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Switch", "Uplink", "Downlink", "Used", "Free"});
  for (const auto& usage : audit.per_switch) {
    table.push_back({usage.switch_name, std::to_string(usage.uplink_ports),
                     std::to_string(usage.downlink_ports), std::to_string(usage.used_ports),
                     std::to_string(usage.free_ports)});
  }
  print_aligned(table, {false, true, true, true, true});
}

void emit(const report::Report& rep, const std::string& format) {
  if (format == "machine") {
    std::fputs(report::to_machine_json(rep).c_str(), stdout);
  } else {
    print_findings_table(rep);
  }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct CommonFlags {
  std::string format = "table";
  bool lenient = false;

  LoadOptions load_options(bool skip_validation = false) const {
    return {lenient, skip_validation};
  }
};

int cmd_validate(const std::string& path, const CommonFlags& flags, const std::string& command) {
  ClusterSpec cluster = load_spec(path, flags.load_options(/*skip_validation=*/true));
  report::Report rep = analysis::validation_report(cluster);
  rep.command = command;
  rep.inputs.push_back(make_input(path));
  emit(rep, flags.format);
  if (!rep.violations.empty()) return kExitViolation;
  if (flags.format == "table") std::printf("OK: %s is a valid cluster description\n", path.c_str());
  return kExitOk;
}

int cmd_peak(const std::string& path, const analysis::PeakQuery& query, const CommonFlags& flags,
             const std::string& command) {
  ClusterSpec cluster = load_spec(path, flags.load_options());
  try {
    if (flags.format == "machine") {
      report::Report rep = analysis::peak_report(cluster, query);
      rep.command = command;
      rep.inputs.push_back(make_input(path));
      emit(rep, flags.format);
    } else {
      print_peak_table(analysis::peak_rows(cluster, query));
    }
  } catch (const std::invalid_argument& e) {
    throw CommandError{kExitInput, e.what()};
  }
  return kExitOk;
}

int cmd_compare(const std::string& baseline_path, const std::string& candidate_path,
                const std::string& variant, const CommonFlags& flags,
                const std::string& command) {
  ClusterSpec baseline = load_spec(baseline_path, flags.load_options());
  ClusterSpec candidate = load_spec(candidate_path, flags.load_options());
  report::Report rep;
  try {
    rep = analysis::compare_report(baseline, candidate, variant);
  } catch (const std::invalid_argument& e) {
    throw CommandError{kExitInput, e.what()};
  }
  rep.command = command;
  rep.inputs.push_back(make_input(baseline_path));
  rep.inputs.push_back(make_input(candidate_path));
  emit(rep, flags.format);
  return kExitOk;
}

int cmd_topology(const std::string& path, const std::string& basis, const CommonFlags& flags,
                 const std::string& command) {
  ClusterSpec cluster = load_spec(path, flags.load_options());
  if (!cluster.fabric) {
    throw CommandError{kExitInput, path + ": no fabric section in the cluster description"};
  }
  report::Report rep = analysis::topology_report(cluster);
  rep.command = command;
  rep.inputs.push_back(make_input(path));
  if (flags.format == "machine") {
    emit(rep, flags.format);
  } else {
    const topo::FabricReport audit = topo::audit_fabric(*cluster.fabric, cluster);
    const double blocking =
        basis == "attached" ? audit.blocking_attached_basis : audit.blocking_port_basis;
    std::printf("Blocking factor (%s basis): %s\n", basis.c_str(),
                format_number(blocking).c_str());
    std::printf("Bisection bandwidth: %s Gbit/s\n",
                format_number(audit.bisection_gbit_s).c_str());
    std::printf("Attached endpoint bandwidth: %s Gbit/s\n",
                format_number(audit.attached_gbit_s_total).c_str());
    std::printf("Downlink ports demanded/available: %llu / %llu\n\n",
                static_cast<unsigned long long>(audit.downlink_ports_demanded),
                static_cast<unsigned long long>(audit.downlink_ports_available));
    print_port_table(audit);
    if (!audit.violations.empty()) {
      std::printf("\nViolations:\n");
      for (const auto& violation : audit.violations) {
        std::printf("  - %s\n", violation.c_str());
      }
    }
  }
  return rep.violations.empty() ? kExitOk : kExitViolation;
}

int cmd_storage(const std::string& path, const std::string& bench_path, const CommonFlags& flags,
                const std::string& command) {
  ClusterSpec cluster = load_spec(path, flags.load_options());
  if (!cluster.storage) {
    throw CommandError{kExitInput, path + ": no storage section in the cluster description"};
  }
  std::optional<storage::BenchReport> bench;
  if (!bench_path.empty()) bench = load_bench_file(bench_path);
  report::Report rep = analysis::storage_report(cluster, bench ? &*bench : nullptr);
  rep.command = command;
  rep.inputs.push_back(make_input(path));
  if (!bench_path.empty()) rep.inputs.push_back(make_input(bench_path));
  emit(rep, flags.format);
  return kExitOk;
}

int cmd_pue(const std::string& path, std::optional<double> total, std::optional<double> it,
            const CommonFlags& flags, const std::string& command) {
  double total_energy = 0.0;
  double it_energy = 0.0;
  std::string label;
  report::Report rep;
  std::vector<report::InputRecord> inputs;
  if (total && it) {
    total_energy = *total;
    it_energy = *it;
    label = "command line";
  } else if (!path.empty()) {
    ClusterSpec cluster = load_spec(path, flags.load_options());
    if (!cluster.measurements || !cluster.measurements->pue_sample) {
      throw CommandError{kExitInput, path + ": no PUE sample in the cluster description"};
    }
    const EnergySample& sample = *cluster.measurements->pue_sample;
    total_energy = sample.total_energy;
    it_energy = sample.it_energy;
    label = sample.period_label;
    inputs.push_back(make_input(path));
  } else {
    throw CommandError{kExitInput,
                       "provide a cluster description with a PUE sample or both --total and --it"};
  }
  try {
    rep = analysis::pue_report(total_energy, it_energy, label);
  } catch (const std::invalid_argument& e) {
    throw CommandError{kExitViolation, e.what()};
  }
  rep.command = command;
  rep.inputs = std::move(inputs);
  emit(rep, flags.format);
  return kExitOk;
}

int cmd_report(const std::string& path, const std::string& bench_path, const CommonFlags& flags,
               const std::string& command) {
  ClusterSpec cluster = load_spec(path, flags.load_options());
  std::optional<storage::BenchReport> bench;
  if (!bench_path.empty()) bench = load_bench_file(bench_path);
  report::Report rep = analysis::full_report(cluster, bench ? &*bench : nullptr);
  rep.command = command;
  rep.inputs.push_back(make_input(path));
  if (!bench_path.empty()) rep.inputs.push_back(make_input(bench_path));
  emit(rep, flags.format);
  return rep.violations.empty() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string command = join_command(argc, argv);

  CLI::App app{"Analytical modeling of HPC cluster capacity and performance"};
  app.set_version_flag("--version", std::string("hpcmodel ") + kVersion);
  app.require_subcommand(1);

  CommonFlags flags;
  const auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"table", "machine"}))
        ->capture_default_str();
    sub->add_flag("--lenient", flags.lenient, "Ignore unknown fields in input files");
  };

  std::string spec_path;
  std::string second_path;
  std::string bench_path;
  analysis::PeakQuery query;
  std::string basis = "port";
  std::optional<double> pue_total;
  std::optional<double> pue_it;
  std::string compare_variant;

  CLI::App* validate = app.add_subcommand("validate", "Check a cluster description");
  validate->add_option("spec", spec_path, "Cluster description file")->required();
  add_common(validate);

  CLI::App* peak = app.add_subcommand("peak", "Theoretical peak floating-point performance");
  peak->add_option("spec", spec_path, "Cluster description file")->required();
  peak->add_option("--partition", query.partition, "Partition name (default: first)");
  peak->add_option("--variant", query.variant, "Vector variant name (default: all)");
  peak->add_option("--frequency", query.frequency_ghz, "Core frequency in GHz (default: base)");
  add_common(peak);

  CLI::App* compare = app.add_subcommand("compare", "Side-by-side comparison of two clusters");
  compare->add_option("baseline", spec_path, "Baseline cluster description")->required();
  compare->add_option("candidate", second_path, "Candidate cluster description")->required();
  compare->add_option("--variant", compare_variant, "Reference peak variant for app efficiency");
  add_common(compare);

  CLI::App* topology = app.add_subcommand("topology", "Fat-tree audit: blocking, bisection, ports");
  topology->add_option("spec", spec_path, "Cluster description file")->required();
  topology->add_option("--basis", basis, "Blocking-factor basis")
      ->check(CLI::IsMember({"port", "attached"}))
      ->capture_default_str();
  add_common(topology);

  CLI::App* storage_cmd = app.add_subcommand("storage", "Storage capacity and benchmark ingestion");
  storage_cmd->add_option("spec", spec_path, "Cluster description file")->required();
  storage_cmd->add_option("--io500", bench_path, "Benchmark result file (name value unit lines)");
  add_common(storage_cmd);

  CLI::App* pue = app.add_subcommand("pue", "Power usage effectiveness");
  pue->add_option("spec", spec_path, "Cluster description file with a PUE sample");
  CLI::Option* opt_total = pue->add_option("--total", pue_total, "Total facility energy (any unit)");
  CLI::Option* opt_it = pue->add_option("--it", pue_it, "IT energy over the same period, same unit");
  opt_total->needs(opt_it);
  opt_it->needs(opt_total);
  add_common(pue);

  CLI::App* full = app.add_subcommand("report", "Consolidated report of every applicable analysis");
  full->add_option("spec", spec_path, "Cluster description file")->required();
  full->add_option("--io500", bench_path, "Benchmark result file (name value unit lines)");
  add_common(full);

  try {
    app.parse(argc, argv);
    if (validate->parsed()) return cmd_validate(spec_path, flags, command);
    if (peak->parsed()) return cmd_peak(spec_path, query, flags, command);
    if (compare->parsed())
      return cmd_compare(spec_path, second_path, compare_variant, flags, command);
    if (topology->parsed()) return cmd_topology(spec_path, basis, flags, command);
    if (storage_cmd->parsed()) return cmd_storage(spec_path, bench_path, flags, command);
    if (pue->parsed()) return cmd_pue(spec_path, pue_total, pue_it, flags, command);
    if (full->parsed()) return cmd_report(spec_path, bench_path, flags, command);
  } catch (const CLI::ParseError& e) {
    const int cli_code = app.exit(e);
    return cli_code == 0 ? kExitOk : kExitInput;
  } catch (const CommandError& e) {
    std::fprintf(stderr, "hpcmodel: %s\n", e.message.c_str());
    return e.code;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "hpcmodel: %s\n", e.what());
    return kExitViolation;
  } catch (const hpcmodel::ParseError& e) {
    std::fprintf(stderr, "hpcmodel: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hpcmodel: %s\n", e.what());
    return kExitInput;
  }
  return kExitOk;
}
