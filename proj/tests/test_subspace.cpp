#include "doctest.h"

#include <algorithm>
#include <bit>
#include <set>

#include "aqc/errors.hpp"
#include "aqc/subspace.hpp"

using namespace aqc;

TEST_SUITE("subspace") {

TEST_CASE("dimensions are exact binomials") {
  CHECK(WeightKBasis(4, 2).dim() == 6);
  CHECK(WeightKBasis(15, 5).dim() == 3003);
  CHECK(WeightKBasis(15, 6).dim() == 5005);
  CHECK(binomial(24, 12) == 2704156);
  CHECK(binomial(32, 16) == 601080390);
}

TEST_CASE("rank and unrank form a monotone bijection (n <= 12, all k)") {
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const WeightKBasis basis(n, k);
      REQUIRE(basis.dim() == binomial(n, k));
      std::uint32_t prev = 0;
      for (std::size_t r = 0; r < basis.dim(); ++r) {
        const std::uint32_t z = basis.mask(r);
        CHECK(std::popcount(z) == k);
        if (r > 0) CHECK(z > prev);  // colex = ascending mask value
        prev = z;
        REQUIRE(basis.rank(z) == r);
      }
    }
  }
}

TEST_CASE("neighbors move one set bit, count k(n-k)") {
  const WeightKBasis b31(3, 1);
  auto nb = b31.johnson_neighbors(0b001);
  std::sort(nb.begin(), nb.end());
  CHECK(nb == std::vector<std::uint32_t>{0b010, 0b100});

  const WeightKBasis b42(4, 2);
  auto nb2 = b42.johnson_neighbors(0b0011);
  std::sort(nb2.begin(), nb2.end());
  CHECK(nb2 == std::vector<std::uint32_t>{0b0101, 0b0110, 0b1001, 0b1010});

  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const WeightKBasis basis(n, k);
      const std::uint32_t z = basis.mask(basis.dim() / 2);
      const auto neigh = basis.johnson_neighbors(z);
      CHECK(neigh.size() == static_cast<std::size_t>(k * (n - k)));
      for (std::uint32_t w : neigh) CHECK(std::popcount(w) == k);
    }
  }
}

TEST_CASE("neighbor relation is symmetric") {
  const WeightKBasis basis(8, 3);
  for (std::size_t r = 0; r < basis.dim(); ++r) {
    const std::uint32_t z = basis.mask(r);
    for (std::uint32_t w : basis.johnson_neighbors(z)) {
      const auto back = basis.johnson_neighbors(w);
      CHECK(std::find(back.begin(), back.end(), z) != back.end());
    }
  }
}

TEST_CASE("weight mismatch and budget refusals") {
  const WeightKBasis basis(6, 3);
  CHECK_THROWS_AS(basis.johnson_neighbors(0b11), std::invalid_argument);
  CHECK_THROWS_AS(WeightKBasis(24, 12, 1000), ResourceLimitError);
}

}  // TEST_SUITE
