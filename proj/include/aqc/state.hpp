#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace aqc {

class WeightKBasis;

/// Complex amplitudes over a weight-k basis, in basis (colex) order.
struct StateVector {
  int n = 0;
  int k = 0;
  std::vector<std::complex<double>> amp;

  double norm() const;
};

/// Uniform superposition of all weight-k states: every amplitude C(n,k)^{-1/2}.
StateVector initial_state(const WeightKBasis& basis);

/// Debug CSV: index,bitmask,re,im in basis order. The bitmask column is the
/// string z_1...z_n (vertex 1 first).
void write_state_csv(const StateVector& psi, const WeightKBasis& basis, std::ostream& os);

}  // namespace aqc
