#include "doctest.h"

#include <complex>
#include <memory>

#include "aqc/hamiltonian.hpp"
#include "aqc/rng.hpp"
#include "aqc/state.hpp"

using namespace aqc;

namespace {

SubspaceHamiltonian make_ham(const Graph& g, int k) {
  return SubspaceHamiltonian(g, std::make_shared<const WeightKBasis>(g.n, k));
}

StateVector random_state(const WeightKBasis& basis, std::uint64_t seed) {
  StateVector psi;
  psi.n = basis.n();
  psi.k = basis.k();
  psi.amp.resize(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i)
    psi.amp[i] = {rng::uniform01(seed, 2 * i) - 0.5, rng::uniform01(seed, 2 * i + 1) - 0.5};
  return psi;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("problem diagonal on handcrafted graphs") {
  const auto ham_complete = make_ham(Graph::complete(7), 4);
  for (auto d : ham_complete.problem_diagonal()) CHECK(d == 0);

  const auto ham_empty = make_ham(Graph::empty_graph(8), 5);
  for (auto d : ham_empty.problem_diagonal()) CHECK(d == 10);  // C(5,2)

  const Graph path4 = Graph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}});
  const auto ham = make_ham(path4, 2);
  // colex order of weight-2 masks: {1,2},{1,3},{2,3},{1,4},{2,4},{3,4}
  const std::vector<std::int32_t> expect{0, 1, 0, 1, 1, 0};
  CHECK(ham.problem_diagonal() == expect);
}

TEST_CASE("apply agrees with the dense matrix on random vectors") {
  for (int n = 4; n <= 10; n += 2) {
    const int k = n / 2;
    const Graph g = generate_random_graph(n, 1000 + static_cast<std::uint64_t>(n));
    const auto ham = make_ham(g, k);
    const auto& basis = ham.basis();
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
      const Eigen::MatrixXd m = ham.dense_matrix(s);
      CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
      for (std::uint64_t trial = 0; trial < 9; ++trial) {
        const StateVector psi = random_state(basis, 555 + trial);
        const StateVector out = ham.apply(s, psi);
        for (std::size_t r = 0; r < basis.dim(); ++r) {
          std::complex<double> want{0.0, 0.0};
          for (std::size_t c = 0; c < basis.dim(); ++c)
            want += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * psi.amp[c];
          CHECK(std::abs(out.amp[r] - want) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("s=0 action is minus the Johnson adjacency") {
  const Graph g = generate_random_graph(9, 77);
  const auto ham = make_ham(g, 4);
  const Eigen::MatrixXd m = ham.dense_matrix(0.0);
  const double deg = ham.basis().degree();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    CHECK(m.row(r).sum() == doctest::Approx(-deg).epsilon(1e-14));

  const StateVector uniform = initial_state(ham.basis());
  const StateVector out = ham.apply(0.0, uniform);
  for (std::size_t i = 0; i < out.amp.size(); ++i)
    CHECK(std::abs(out.amp[i] + deg * uniform.amp[i]) < 1e-12);
}

TEST_CASE("s=1 annihilates clique indicators") {
  const Graph g = generate_random_graph(10, 4242);
  const InstanceClassification cls = classify(g);
  const auto ham = make_ham(g, cls.max_clique_size);
  StateVector ind;
  ind.n = g.n;
  ind.k = cls.max_clique_size;
  ind.amp.assign(ham.dim(), {0.0, 0.0});
  ind.amp[ham.basis().rank(cls.cliques_at_max.front().mask)] = {1.0, 0.0};
  const StateVector out = ham.apply(1.0, ind);
  for (const auto& a : out.amp) CHECK(std::abs(a) == 0.0);
}

TEST_CASE("one matvec by hand at s=0.5") {
  const Graph path4 = Graph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}});
  const auto ham = make_ham(path4, 2);
  const auto& basis = ham.basis();
  StateVector ind;
  ind.n = 4;
  ind.k = 2;
  ind.amp.assign(6, {0.0, 0.0});
  const std::size_t r34 = basis.rank(0b1100);  // subset {3,4}
  ind.amp[r34] = {1.0, 0.0};
  const StateVector out = ham.apply(0.5, ind);
  for (std::uint32_t nb : basis.johnson_neighbors(0b1100))
    CHECK(out.amp[basis.rank(nb)] == std::complex<double>{-0.5, 0.0});
  CHECK(out.amp[r34] == std::complex<double>{0.0, 0.0});  // diagonal entry is 0
}

TEST_CASE("spectral ranges at the endpoints") {
  const Graph g = generate_random_graph(8, 5150);
  const int k = 4;
  const auto ham = make_ham(g, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(ham.dense_matrix(0.0));
  const double bound = k * (g.n - k);
  CHECK(es0.eigenvalues().minCoeff() >= -bound - 1e-12);
  CHECK(es0.eigenvalues().maxCoeff() <= bound + 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(ham.dense_matrix(1.0));
  for (Eigen::Index i = 0; i < es1.eigenvalues().size(); ++i) {
    const double e = es1.eigenvalues()(i);
    CHECK(std::abs(e - std::round(e)) < 1e-12);
  }
}

TEST_CASE("zero-diagonal states are exactly the k-cliques") {
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    const Graph g = generate_random_graph(11, seed);
    const InstanceClassification cls = classify(g);
    const auto ham = make_ham(g, cls.max_clique_size);
    const auto idx = ham.clique_indices();
    REQUIRE(idx.size() == cls.cliques_at_max.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      CHECK(ham.basis().mask(idx[i]) == cls.cliques_at_max[i].mask);
  }
}

TEST_CASE("dimension mismatch is a contract violation") {
  const auto ham = make_ham(Graph::complete(6), 3);
  StateVector bad;
  bad.amp.assign(7, {0.0, 0.0});
  CHECK_THROWS_AS(ham.apply(0.5, bad), std::invalid_argument);
}

}  // TEST_SUITE
