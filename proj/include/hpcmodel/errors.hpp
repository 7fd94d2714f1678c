#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hpcmodel {

// Unreadable file, malformed JSON, schema-version mismatch, wrong value
// types, or unknown fields in strict mode.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message) : std::runtime_error(message) {}
};

// A semantic invariant does not hold. `field()` is the dotted path to the
// offending field, e.g. "partitions[0].node_count".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hpcmodel
