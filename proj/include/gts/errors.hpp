#pragma once

#include <stdexcept>
#include <string>

namespace gts {

enum class errc {
  none = 0,
  invalid_argument,
  chebyshev_violation,
  degenerate_span,
  multiplicity_too_high,
  index_out_of_range,
  knot_outside_domain,
  multiplicity_overflow,
  function_vector_mismatch,
  malformed_partition,
  not_admissible,
  insufficient_intersections,
  requires_ad_plus,
  step_limit_exceeded,
  dimension_mismatch,
  zero_denominator,
  singular_fit,
  parse_error,
  io_error,
  internal,
};

const char* errc_name(errc code);

/// Single exception type carrying a machine-readable code; the C boundary
/// maps codes to status values, messages stay human-oriented.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gts
