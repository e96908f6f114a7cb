#include "aqc/subspace.hpp"

#include <stdexcept>
#include <string>

#include "aqc/errors.hpp"

namespace aqc {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n >= detail::kMaxBits) throw std::invalid_argument("binomial: n out of range");
  if (k < 0 || k > n) return 0;
  return detail::kBinom[n][k];
}

WeightKBasis::WeightKBasis(int n, int k, std::size_t dim_budget) : n_(n), k_(k) {
  if (n < 1 || n > 32) throw std::invalid_argument("basis: n must be in [1, 32]");
  if (k < 0 || k > n) throw std::invalid_argument("basis: k must be in [0, n]");
  const std::uint64_t dim = binomial(n, k);
  if (dim > dim_budget) {
    throw ResourceLimitError("basis: dim C(" + std::to_string(n) + "," + std::to_string(k) +
                             ") = " + std::to_string(dim) + " exceeds budget " +
                             std::to_string(dim_budget));
  }
  masks_.reserve(static_cast<std::size_t>(dim));
  if (k == 0) {
    masks_.push_back(0);
    return;
  }
  // Gosper's hack walks weight-k masks in ascending numeric = colex order.
  std::uint64_t z = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (z < limit) {
    masks_.push_back(static_cast<std::uint32_t>(z));
    const std::uint64_t c = z & (~z + 1);
    const std::uint64_t r = z + c;
    z = (((r ^ z) >> 2) / c) | r;
  }
}

std::vector<std::uint32_t> WeightKBasis::johnson_neighbors(std::uint32_t z) const {
  if (std::popcount(z) != k_ || (n_ < 32 && (z >> n_) != 0))
    throw std::invalid_argument("johnson_neighbors: mask is not a weight-k string over n bits");
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(degree()));
  std::uint32_t ones = z;
  while (ones != 0) {
    const std::uint32_t a = ones & (~ones + 1);
    ones &= ones - 1;
    for (int b = 0; b < n_; ++b) {
      const std::uint32_t bb = std::uint32_t{1} << b;
      if ((z & bb) == 0) out.push_back((z ^ a) | bb);
    }
  }
  return out;
}

WeightKBasis build_basis(int n, int k, std::size_t dim_budget) {
  return WeightKBasis(n, k, dim_budget);
}

}  // namespace aqc
