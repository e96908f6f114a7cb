#include "aqc/hamiltonian.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "aqc/errors.hpp"

namespace aqc {

std::vector<std::int32_t> build_problem_diagonal(const Graph& g, const WeightKBasis& basis) {
  if (g.n != basis.n())
    throw std::invalid_argument("problem diagonal: graph and basis disagree on n");
  std::vector<std::int32_t> diag(basis.dim());
  for (std::size_t r = 0; r < basis.dim(); ++r) {
    const std::uint32_t z = basis.mask(r);
    std::int32_t missing = 0;
    std::uint32_t rest = z;
    while (rest != 0) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      // pairs {i, j} with j > i, both selected, no edge
      missing += std::popcount(rest & ~g.adj[static_cast<std::size_t>(i)]);
    }
    diag[r] = missing;
  }
  return diag;
}

SubspaceHamiltonian::SubspaceHamiltonian(const Graph& g,
                                         std::shared_ptr<const WeightKBasis> basis)
    : basis_(std::move(basis)), diag_(build_problem_diagonal(g, *basis_)) {}

// Row kernel: for each set position of z (the removed bit) and each unset
// position b (the inserted bit), the neighbor's colex rank is accumulated
// from combinatorial-number-system terms. For a fixed removed bit, the
// insertion index of b changes only when b sweeps past a remaining set
// position, so each neighbor rank costs O(1) amortized.
//
// With c_1 < ... < c_k the set positions (0-based values, 1-based CNS
// indices), removing c_i leaves d_1 < ... < d_{k-1}; inserting b above
// exactly j of the d's gives
//   rank = sum_{m<=j} C(d_m, m) + C(b, j+1) + sum_{m>j} C(d_m, m+1),
// where d_m = c_m for m < i and d_m = c_{m+1} for m >= i.
template <typename Scalar>
void SubspaceHamiltonian::apply_impl(double s, std::span<const Scalar> in,
                                     std::span<Scalar> out) const {
  const std::size_t dim = basis_->dim();
  if (in.size() != dim || out.size() != dim)
    throw std::invalid_argument("apply: state dimension does not match the basis");
  const int n = basis_->n();
  const int k = basis_->k();
  const double hop = s - 1.0;  // (1-s) * (H_B psi)_z = -(1-s) * sum over neighbors
  const auto& binom = detail::kBinom;
  const auto& masks = basis_->masks();
  const Scalar* input = in.data();

  int pos[33];
  int freep[32];
  std::uint64_t term[33][3];  // term[m][d] = C(c_m, m - 1 + d) for d = 0,1,2

  for (std::size_t r = 0; r < dim; ++r) {
    const std::uint32_t z = masks[r];
    {
      std::uint32_t rest = z;
      for (int m = 1; m <= k; ++m) {
        const int c = std::countr_zero(rest);
        rest &= rest - 1;
        pos[m] = c;
        term[m][0] = binom[c][m - 1];
        term[m][1] = binom[c][m];
        term[m][2] = binom[c][m + 1];
      }
      int nf = 0;
      for (int b = 0; b < n; ++b)
        if (((z >> b) & 1u) == 0) freep[nf++] = b;
    }
    const int nf = n - k;
    std::uint32_t idx[1024];  // neighbor ranks of this row, k(n-k) <= 1024
    int deg = 0;
    for (int i = 1; i <= k; ++i) {
      // Insertion positions are swept in segments between the remaining set
      // positions d: within a segment the insertion index j and the rank
      // contribution of the d's are constant. Below all d's, c_m (m < i)
      // carries CNS index m+1 and c_m (m > i) carries index m; passing a d
      // lowers its index by one.
      std::uint64_t rank_rest = 0;
      for (int m = 1; m < i; ++m) rank_rest += term[m][2];
      for (int m = i + 1; m <= k; ++m) rank_rest += term[m][1];
      int j = 0;                    // d's below the current segment
      int next = (i == 1) ? 2 : 1;  // original index of the next d
      int f = 0;
      while (f < nf) {
        const int seg_end = (next <= k) ? pos[next] : n;
        const std::uint64_t* col = &binom[0][j + 1];
        const std::uint64_t base = rank_rest;
        while (f < nf && freep[f] < seg_end) {
          idx[deg++] = static_cast<std::uint32_t>(
              base + col[static_cast<std::size_t>(freep[f]) * detail::kMaxBits]);
          ++f;
        }
        if (next > k) break;
        rank_rest += (next < i) ? term[next][1] - term[next][2]
                                : term[next][0] - term[next][1];
        ++j;
        ++next;
        if (next == i) ++next;
      }
    }
    // gather with independent accumulators so the loads overlap
    Scalar a0{}, a1{}, a2{}, a3{};
    int t = 0;
    for (; t + 4 <= deg; t += 4) {
      a0 += input[idx[t]];
      a1 += input[idx[t + 1]];
      a2 += input[idx[t + 2]];
      a3 += input[idx[t + 3]];
    }
    for (; t < deg; ++t) a0 += input[idx[t]];
    out[r] = ((a0 + a1) + (a2 + a3)) * hop + in[r] * (s * diag_[r]);
  }
}

void SubspaceHamiltonian::apply(double s, std::span<const std::complex<double>> in,
                                std::span<std::complex<double>> out) const {
  apply_impl<std::complex<double>>(s, in, out);
}

void SubspaceHamiltonian::apply(double s, std::span<const double> in,
                                std::span<double> out) const {
  apply_impl<double>(s, in, out);
}

StateVector SubspaceHamiltonian::apply(double s, const StateVector& psi) const {
  StateVector out;
  out.n = basis_->n();
  out.k = basis_->k();
  out.amp.resize(basis_->dim());
  apply(s, std::span<const std::complex<double>>(psi.amp), std::span<std::complex<double>>(out.amp));
  return out;
}

Eigen::MatrixXd SubspaceHamiltonian::dense_matrix(double s, std::size_t max_dim) const {
  const std::size_t dim = basis_->dim();
  if (dim > max_dim)
    throw ResourceLimitError("dense_matrix: dim " + std::to_string(dim) + " exceeds " +
                             std::to_string(max_dim));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = s * diag_[r];
    for (std::uint32_t nb : basis_->johnson_neighbors(basis_->mask(r))) {
      const std::size_t c = basis_->rank(nb);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = -(1.0 - s);
    }
  }
  return m;
}

std::vector<std::size_t> SubspaceHamiltonian::clique_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t r = 0; r < diag_.size(); ++r)
    if (diag_[r] == 0) idx.push_back(r);
  return idx;
}

}  // namespace aqc
