#include "hpcmodel/storage.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hpcmodel/errors.hpp"

namespace hpcmodel::storage {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

// Accepts both "179.2" and the comma decimal separator "179,2".
double parse_value(std::string token, int line_no) {
  std::replace(token.begin(), token.end(), ',', '.');
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + token +
                     "' is not a number");
  }
  return value;
}

BenchUnit parse_unit(const std::string& token, int line_no) {
  if (token == "GB/s") return BenchUnit::gb_s;
  if (token == "kIOPS") return BenchUnit::kiops;
  throw ParseError("line " + std::to_string(line_no) + ": unknown unit '" + token +
                   "' (expected GB/s or kIOPS)");
}

}  // namespace

std::uint64_t pool_raw_capacity(const Pool& pool) {
  return pool.device_count * pool.device_capacity_bytes;
}

CapacitySummary capacity_summary(const StorageSpec& storage) {
  CapacitySummary summary;
  for (const auto& pool : storage.pools) {
    const std::uint64_t raw = pool_raw_capacity(pool);
    summary.raw_bytes += raw;
    summary.pools.push_back({pool.name, raw});
  }
  summary.usable_bytes = storage.usable_capacity_bytes;
  summary.usable_fraction =
      summary.raw_bytes > 0
          ? static_cast<double>(summary.usable_bytes) / static_cast<double>(summary.raw_bytes)
          : 0.0;
  return summary;
}

const BenchMetric* BenchReport::find(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

BenchReport parse_bench(std::string_view text, std::string default_label) {
  BenchReport report;
  report.label = std::move(default_label);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string comment = trim(line.substr(1));
      constexpr std::string_view kLabelPrefix = "label:";
      if (comment.starts_with(kLabelPrefix)) {
        report.label = trim(comment.substr(kLabelPrefix.size()));
      }
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() < 3) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'name value unit', got '" + line + "'");
    }
    BenchMetric metric;
    metric.unit = parse_unit(tokens.back(), line_no);
    metric.value = parse_value(tokens[tokens.size() - 2], line_no);
    std::string name;
    for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
      if (!name.empty()) name += ' ';
      name += tokens[i];
    }
    metric.name = std::move(name);
    report.metrics.push_back(std::move(metric));
  }
  return report;
}

BenchReport load_bench(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_bench(buffer.str(), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_bench(const BenchReport& report) {
  std::string out;
  if (!report.label.empty()) {
    out += "# label: " + report.label + "\n";
  }
  char buffer[64];
  for (const auto& m : report.metrics) {
    // Shortest representation that parses back to the same double.
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, m.value);
    out += m.name;
    out += ' ';
    out.append(buffer, ec == std::errc() ? end : buffer);
    out += ' ';
    out += to_string(m.unit);
    out += '\n';
  }
  return out;
}

const char* to_string(BenchUnit unit) { return unit == BenchUnit::gb_s ? "GB/s" : "kIOPS"; }

BenchComparison compare_bench(const BenchReport& a, const BenchReport& b) {
  BenchComparison result;
  std::map<std::string, const BenchMetric*> in_b;
  for (const auto& m : b.metrics) in_b.emplace(m.name, &m);

  for (const auto& ma : a.metrics) {
    const auto it = in_b.find(ma.name);
    if (it == in_b.end()) {
      result.only_in_a.push_back(ma.name);
      continue;
    }
    if (it->second->unit != ma.unit) {
      throw std::invalid_argument("compare_bench: metric '" + ma.name +
                                  "' has mismatched units");
    }
    result.matched.emplace_back(
        ma.name, perf::speedup(ma.value, it->second->value, Orientation::higher_is_better));
    in_b.erase(it);
  }
  for (const auto& m : b.metrics) {
    if (in_b.contains(m.name)) result.only_in_b.push_back(m.name);
  }
  return result;
}

}  // namespace hpcmodel::storage
