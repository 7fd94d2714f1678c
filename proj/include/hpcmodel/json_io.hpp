#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hpcmodel/model.hpp"

namespace hpcmodel {

inline constexpr int kSchemaVersion = 1;

struct LoadOptions {
  // Strict mode (default) rejects unknown fields; lenient mode ignores them.
  bool lenient = false;
  // Skip semantic validation after construction (used by the validate
  // command, which wants the full violation list instead of the first error).
  bool skip_validation = false;
};

// Parse + construct + validate. Throws ParseError for malformed input and
// ValidationError for semantic-invariant violations.
ClusterSpec load_cluster(const std::filesystem::path& path, const LoadOptions& options = {});
ClusterSpec parse_cluster(std::string_view text, const LoadOptions& options = {});

std::string serialize_cluster(const ClusterSpec& cluster);
void save_cluster(const ClusterSpec& cluster, const std::filesystem::path& path);

}  // namespace hpcmodel
