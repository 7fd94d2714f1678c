#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hpcmodel::report {

struct Finding {
  std::string key;
  double value = 0.0;
  std::string unit;
  std::string provenance;  // which spec fields / formula produced the value

  bool operator==(const Finding&) const = default;
};

struct InputRecord {
  std::string path;
  std::string digest;  // fnv1a64:<16 hex digits> over the raw bytes

  bool operator==(const InputRecord&) const = default;
};

struct Report {
  std::string tool_version;
  std::string command;
  std::vector<InputRecord> inputs;
  std::vector<Finding> findings;
  std::vector<std::string> violations;

  const Finding* find(std::string_view key) const;
  void add(std::string key, double value, std::string unit, std::string provenance);
};

// Deterministic machine rendering: fixed key order, findings in insertion
// order, floats rounded to 6 significant digits. Identical reports render
// byte-identically.
std::string to_machine_json(const Report& report);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_bytes(std::string_view bytes);
// Throws ParseError if the file cannot be read.
std::string digest_file(const std::filesystem::path& path);

double round_significant(double value, int digits);
std::string format_significant(double value, int digits);

}  // namespace hpcmodel::report
