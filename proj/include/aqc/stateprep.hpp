#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>

#include "aqc/spectrum.hpp"

namespace aqc {

/// Probability that measuring the Hamming weight after the biased Hadamard
/// transform yields exactly k: C(n,k) (k/n)^k (1-k/n)^{n-k}, evaluated in
/// log-space; 1 when k is 0 or n.
double biased_prep_probability(int n, int k);

/// Empirical frequency of weight-k outcomes over `trials` samples of
/// Binomial(n, k/n). The measurement statistics are exactly binomial, so the
/// 2^n-dimensional state is never formed. Counter-based draws: trial t uses
/// words (seed, t*n) .. (seed, t*n + n - 1).
double biased_prep_sample(int n, int k, std::uint64_t seed, std::uint64_t trials);

/// Total-spin S_x in the (n+1)-dimensional symmetric sector, basis |m>,
/// m = -n/2 .. n/2 (index j = m + n/2).
Eigen::MatrixXd symmetric_sx_matrix(int n);

/// The state-preparation Hamiltonian pair in the symmetric sector:
/// H_B0 = n/2 - S_x (tridiagonal), H_P0 = diag((n - j - k)^2).
struct SymmetricPrep {
  int n = 0;
  int k = 0;
  Eigen::MatrixXd h_begin;
  Eigen::VectorXd h_problem_diag;

  Eigen::MatrixXd hamiltonian(double s) const;
};

SymmetricPrep make_symmetric_prep(int n, int k);

/// Gap scan of (1-s) H_B0 + s H_P0 by dense diagonalization across the grid,
/// with the same refinement protocol as the clique-Hamiltonian scan.
GapReport symmetric_prep_gap(int n, int k, const GapScanOptions& opts = {});

/// CSV: s,E_0,...,E_{m-1},gap per grid row (csv_levels energies).
void write_prep_gap_csv(const GapReport& report, std::ostream& os);

}  // namespace aqc
