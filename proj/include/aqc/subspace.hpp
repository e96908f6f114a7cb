#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace aqc {

namespace detail {

inline constexpr int kMaxBits = 33;

consteval std::array<std::array<std::uint64_t, kMaxBits>, kMaxBits> make_binomial_table() {
  std::array<std::array<std::uint64_t, kMaxBits>, kMaxBits> t{};
  for (int n = 0; n < kMaxBits; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k)
      t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
  }
  return t;
}

inline constexpr auto kBinom = make_binomial_table();

}  // namespace detail

/// C(n, k) in exact integer arithmetic for 0 <= k <= n < 33.
std::uint64_t binomial(int n, int k);

/// Basis of the C(n,k)-dimensional Hamming-weight-k subspace.
///
/// Index order is the colex order of bitmasks: ascending numeric mask value,
/// with vertex i mapped to bit i-1 (bit 0 = least significant). This order is
/// part of the state-vector file format.
class WeightKBasis {
 public:
  static constexpr std::size_t kDefaultDimBudget = 10'000'000;

  WeightKBasis(int n, int k, std::size_t dim_budget = kDefaultDimBudget);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::size_t dim() const noexcept { return masks_.size(); }
  /// Johnson graph J(n,k) is k(n-k)-regular.
  int degree() const noexcept { return k_ * (n_ - k_); }

  std::uint32_t mask(std::size_t r) const { return masks_[r]; }
  const std::vector<std::uint32_t>& masks() const noexcept { return masks_; }

  /// Combinatorial-number-system rank: sum of C(c_i, i) over the ascending
  /// set-bit positions c_1 < ... < c_k. O(k), no hashing.
  std::size_t rank(std::uint32_t z) const {
    std::size_t r = 0;
    int i = 0;
    while (z != 0) {
      const int c = std::countr_zero(z);
      z &= z - 1;
      r += detail::kBinom[c][++i];
    }
    return r;
  }

  /// All masks reachable from z by moving one set bit to an unset position
  /// (one transposition of a 1 and a 0); exactly k(n-k) of them.
  /// Requires popcount(z) == k.
  std::vector<std::uint32_t> johnson_neighbors(std::uint32_t z) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint32_t> masks_;
};

WeightKBasis build_basis(int n, int k,
                         std::size_t dim_budget = WeightKBasis::kDefaultDimBudget);

}  // namespace aqc
