#include "aqc/state.hpp"

#include <cmath>
#include <ostream>

#include "aqc/subspace.hpp"
#include "aqc/util.hpp"

namespace aqc {

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

StateVector initial_state(const WeightKBasis& basis) {
  StateVector psi;
  psi.n = basis.n();
  psi.k = basis.k();
  psi.amp.assign(basis.dim(), 1.0 / std::sqrt(static_cast<double>(basis.dim())));
  return psi;
}

void write_state_csv(const StateVector& psi, const WeightKBasis& basis, std::ostream& os) {
  os << "index,bitmask,re,im\n";
  for (std::size_t r = 0; r < psi.amp.size(); ++r) {
    os << r << ",";
    const std::uint32_t z = basis.mask(r);
    for (int b = 0; b < basis.n(); ++b) os << (((z >> b) & 1u) ? '1' : '0');
    os << "," << format_double(psi.amp[r].real()) << "," << format_double(psi.amp[r].imag())
       << "\n";
  }
}

}  // namespace aqc
