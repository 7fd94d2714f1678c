#include "hpcmodel/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hpcmodel/errors.hpp"
#include "hpcmodel/version.hpp"
#include "nlohmann/json.hpp"

namespace hpcmodel::report {

namespace {

using ordered = nlohmann::ordered_json;

// Emit integral values as JSON integers so machine output stays clean.
ordered json_number(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < 9.0e15) {
    return ordered(static_cast<std::int64_t>(value));
  }
  return ordered(value);
}

}  // namespace

const Finding* Report::find(std::string_view key) const {
  for (const auto& f : findings) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

void Report::add(std::string key, double value, std::string unit, std::string provenance) {
  findings.push_back({std::move(key), value, std::move(unit), std::move(provenance)});
}

std::string to_machine_json(const Report& report) {
  ordered j;
  j["tool"] = "hpcmodel";
  j["version"] = report.tool_version.empty() ? kVersion : report.tool_version;
  j["command"] = report.command;
  j["inputs"] = ordered::array();
  for (const auto& input : report.inputs) {
    j["inputs"].push_back(ordered{{"path", input.path}, {"digest", input.digest}});
  }
  j["findings"] = ordered::array();
  for (const auto& f : report.findings) {
    j["findings"].push_back(ordered{{"key", f.key},
                                    {"value", json_number(round_significant(f.value, 6))},
                                    {"unit", f.unit},
                                    {"provenance", f.provenance}});
  }
  j["violations"] = report.violations;
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string digest_bytes(std::string_view bytes) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buffer;
}

std::string digest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return digest_bytes(buffer.str());
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

std::string format_significant(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

}  // namespace hpcmodel::report
