#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "aqc/graph.hpp"
#include "aqc/state.hpp"
#include "aqc/subspace.hpp"

namespace aqc {

/// Interpolating Hamiltonian H(s) = (1-s) H_B + s H_P restricted to the
/// weight-k subspace.
///
/// H_B acts as minus the Johnson-graph adjacency operator; it is never stored
/// as a matrix, the matvec regenerates the neighbors of each row on the fly.
/// H_P is the stored integer diagonal: entry r counts the vertex pairs
/// selected by unrank(r) that are not connected in the graph, so an entry is
/// zero exactly when that subset is a clique.
class SubspaceHamiltonian {
 public:
  SubspaceHamiltonian(const Graph& g, std::shared_ptr<const WeightKBasis> basis);

  const WeightKBasis& basis() const noexcept { return *basis_; }
  std::size_t dim() const noexcept { return basis_->dim(); }
  const std::vector<std::int32_t>& problem_diagonal() const noexcept { return diag_; }

  /// out = (1-s) (H_B in) + s (H_P in). Pure; no allocation; the access
  /// pattern does not depend on s.
  void apply(double s, std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) const;
  void apply(double s, std::span<const double> in, std::span<double> out) const;

  StateVector apply(double s, const StateVector& psi) const;

  /// Explicit dense matrix, test oracle for apply and input to the dense
  /// eigensolvers. Refuses dim > max_dim.
  Eigen::MatrixXd dense_matrix(double s, std::size_t max_dim = 4096) const;

  /// Basis indices with zero diagonal, i.e. the k-cliques.
  std::vector<std::size_t> clique_indices() const;

 private:
  template <typename Scalar>
  void apply_impl(double s, std::span<const Scalar> in, std::span<Scalar> out) const;

  std::shared_ptr<const WeightKBasis> basis_;
  std::vector<std::int32_t> diag_;
};

/// Entry r = number of pairs i<j selected by unrank(r) with no edge in g.
std::vector<std::int32_t> build_problem_diagonal(const Graph& g, const WeightKBasis& basis);

}  // namespace aqc
