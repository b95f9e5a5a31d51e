#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kneadlab {

enum class ErrorKind {
  depth_exceeded,
  invalid_map,
  insufficient_spec,
  insufficient_depth,
  zero_point,
  not_found,
  invalid_input,
  invalid_path,
  dimension_mismatch,
  not_in_simplex,
  not_surjective,
  invalid_targets,
  precondition_violation,
  inconsistent_differences,
  invariant_violation,
  parse_error,
  cycle_detected,
  internal,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception; kind() is the
// machine-readable category, what() the human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kneadlab
