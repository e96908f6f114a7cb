#pragma once

#include <stdexcept>

namespace aqc {

/// Refusal driven by a configured resource limit (dimension budget,
/// attempt cap, bracket cap, exhaustive-search bound).
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure: non-finite amplitudes, step budget exhausted,
/// eigensolver breakdown.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace aqc
