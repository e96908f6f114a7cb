#include "doctest.h"

#include "aqc/rng.hpp"

TEST_SUITE("rng") {

TEST_CASE("word is a pure function of seed and counter") {
  CHECK(aqc::rng::word(1, 0) == aqc::rng::word(1, 0));
  CHECK(aqc::rng::word(1, 0) != aqc::rng::word(1, 1));
  CHECK(aqc::rng::word(1, 0) != aqc::rng::word(2, 0));
}

TEST_CASE("uniform01 stays in [0,1)") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const double u = aqc::rng::uniform01(42, t);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("coin is roughly fair") {
  int heads = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) heads += aqc::rng::coin(7, static_cast<std::uint64_t>(t));
  const double f = static_cast<double>(heads) / trials;
  CHECK(f > 0.49);
  CHECK(f < 0.51);
}

}  // TEST_SUITE
