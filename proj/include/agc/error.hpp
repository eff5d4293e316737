#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agc {

enum class ErrorCode {
  invalid_graph,
  missing_labels,
  empty_graph,
  invalid_dimension,
  dimension_mismatch,
  invalid_ratio,
  ratio_below_schedule,
  size_mismatch,
  empty_type,
  unknown_type,
  missing_target_labels,
  too_large,
  all_zero_eigenvalues,
  degenerate_features,
  invalid_params,
  zero_distance,
  degenerate_input,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable error kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace agc
