#include "doctest.h"

#include <cmath>
#include <numbers>

#include "aqc/stateprep.hpp"
#include "aqc/subspace.hpp"

using namespace aqc;

TEST_SUITE("stateprep") {

TEST_CASE("closed-form measurement probability") {
  CHECK(biased_prep_probability(10, 5) == doctest::Approx(252.0 / 1024.0).epsilon(1e-12));
  CHECK(biased_prep_probability(7, 0) == 1.0);
  CHECK(biased_prep_probability(7, 7) == 1.0);
  // p(n, n/2) ~ sqrt(2/(n pi)) for large even n
  const double p50 = biased_prep_probability(50, 25);
  const double approx50 = std::sqrt(2.0 / (50.0 * std::numbers::pi));
  CHECK(std::abs(p50 - approx50) / approx50 < 0.05);
}

TEST_CASE("probability floor over all k") {
  for (int n = 2; n <= 100; ++n) {
    const double floor_est = std::sqrt(2.0 / (n * std::numbers::pi)) * (1.0 - 0.26 / n);
    for (int k = 1; k < n; ++k) CHECK(biased_prep_probability(n, k) >= floor_est);
  }
}

TEST_CASE("expected repetitions stay near the square-root envelope at n=20") {
  const double envelope = std::sqrt(20.0 * std::numbers::pi / 2.0) * 1.05;
  for (int k = 0; k <= 20; ++k) CHECK(1.0 / biased_prep_probability(20, k) <= envelope);
}

TEST_CASE("sampled weight-k frequency matches the closed form") {
  const std::uint64_t trials = 200000;
  const double p = biased_prep_probability(10, 5);
  const double freq = biased_prep_sample(10, 5, 91, trials);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  CHECK(std::abs(freq - p) < 3.0 * se);
  CHECK(biased_prep_sample(1, 1, 5, 1000) == 1.0);
}

TEST_CASE("S_x is symmetric with spectrum -n/2..n/2") {
  for (int n : {8, 9, 16}) {
    const Eigen::MatrixXd sx = symmetric_sx_matrix(n);
    CHECK((sx - sx.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sx);
    for (int j = 0; j <= n; ++j)
      CHECK(es.eigenvalues()(j) == doctest::Approx(j - n / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("s=0 ground state carries square-root binomial amplitudes") {
  const int n = 10;
  const SymmetricPrep prep = make_symmetric_prep(n, 4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(prep.hamiltonian(0.0));
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-10));
  Eigen::VectorXd v = es.eigenvectors().col(0);
  if (v(n / 2) < 0) v = -v;
  Eigen::VectorXd want(n + 1);
  for (int j = 0; j <= n; ++j)
    want(j) = std::sqrt(static_cast<double>(binomial(n, j)));
  want.normalize();
  CHECK((v - want).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("problem diagonal zeroes exactly at the target weight") {
  const SymmetricPrep prep = make_symmetric_prep(9, 3);
  for (int j = 0; j <= 9; ++j) {
    const double d = prep.h_problem_diag(j);
    CHECK(d >= 0.0);
    CHECK(d == doctest::Approx(std::round(d)));
    if (j == 9 - 3)
      CHECK(d == 0.0);
    else
      CHECK(d >= 1.0);
  }
}

TEST_CASE("gap at s=1 is exactly one for 0 < k < n") {
  for (int n : {6, 11}) {
    for (int k : {1, n / 2, n - 1}) {
      const SymmetricPrep prep = make_symmetric_prep(n, k);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(prep.hamiltonian(1.0));
      CHECK(es.eigenvalues()(1) - es.eigenvalues()(0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("minimum gap of the preparation Hamiltonian at n=16, k=8") {
  const GapReport rep = symmetric_prep_gap(16, 8);
  CHECK(rep.g == doctest::Approx(0.991764).epsilon(2e-4));
  CHECK(rep.s_star > 0.9);

  GapScanOptions finer;
  finer.grid_points = 201;
  const GapReport rep2 = symmetric_prep_gap(16, 8, finer);
  CHECK(std::abs(rep.g - rep2.g) < 1e-6);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(biased_prep_probability(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(biased_prep_probability(5, 6), std::invalid_argument);
  CHECK_THROWS_AS(biased_prep_sample(5, 2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_symmetric_prep(4, 5), std::invalid_argument);
}

}  // TEST_SUITE
