#pragma once

#include <stdexcept>
#include <string>

namespace helix {

// Failure taxonomy shared by the library and the CLI exit-code mapping.
// Validation-class codes describe a bad request; the rest are numerical
// breakdowns discovered while computing.
enum class Errc {
  non_positive_b,
  axis_intersection,
  bad_frequency,
  cusped_profile,
  bad_config,
  zero_momentum,
  zero_speed,
  below_minimum,
  forbidden_region,
  degenerate_critical,
  step_failure,
  event_storm,
  io_error,
};

const char* errc_name(Errc code);

// true for codes the CLI maps to exit 1, false for exit-2 numerical failures
bool is_validation_error(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace helix
