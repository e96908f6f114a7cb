#include "aqc/stateprep.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "aqc/errors.hpp"
#include "aqc/rng.hpp"
#include "aqc/util.hpp"

namespace aqc {

double biased_prep_probability(int n, int k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("biased_prep_probability: need 0 <= k <= n, n >= 1");
  if (k == 0 || k == n) return 1.0;
  const double nn = n, kk = k;
  const double log_p = std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1) +
                       kk * std::log(kk / nn) + (nn - kk) * std::log(1.0 - kk / nn);
  return std::exp(log_p);
}

double biased_prep_sample(int n, int k, std::uint64_t seed, std::uint64_t trials) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("biased_prep_sample: need 0 <= k <= n, n >= 1");
  if (trials < 1) throw std::invalid_argument("biased_prep_sample: trials must be >= 1");
  const double p = static_cast<double>(k) / n;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    int weight = 0;
    const std::uint64_t base = t * static_cast<std::uint64_t>(n);
    for (int q = 0; q < n; ++q)
      weight += rng::uniform01(seed, base + static_cast<std::uint64_t>(q)) < p ? 1 : 0;
    hits += weight == k ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

Eigen::MatrixXd symmetric_sx_matrix(int n) {
  if (n < 1) throw std::invalid_argument("symmetric_sx_matrix: n must be >= 1");
  Eigen::MatrixXd sx = Eigen::MatrixXd::Zero(n + 1, n + 1);
  const double half_n = n / 2.0;
  for (int j = 0; j < n; ++j) {
    const double m = j - half_n;
    const double v = 0.5 * std::sqrt(half_n * (half_n + 1) - m * (m + 1));
    sx(j, j + 1) = v;
    sx(j + 1, j) = v;
  }
  return sx;
}

SymmetricPrep make_symmetric_prep(int n, int k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("symmetric prep: need 0 <= k <= n, n >= 1");
  SymmetricPrep prep;
  prep.n = n;
  prep.k = k;
  prep.h_begin = Eigen::MatrixXd::Identity(n + 1, n + 1) * (n / 2.0) - symmetric_sx_matrix(n);
  prep.h_problem_diag.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double w = n - j - k;  // Hamming weight minus k at |m = j - n/2>
    prep.h_problem_diag(j) = w * w;
  }
  return prep;
}

Eigen::MatrixXd SymmetricPrep::hamiltonian(double s) const {
  Eigen::MatrixXd h = (1.0 - s) * h_begin;
  h.diagonal() += s * h_problem_diag;
  return h;
}

GapReport symmetric_prep_gap(int n, int k, const GapScanOptions& opts) {
  const SymmetricPrep prep = make_symmetric_prep(n, k);
  const Eigen::MatrixXd dh = Eigen::MatrixXd(prep.h_problem_diag.asDiagonal()) - prep.h_begin;

  auto point_at = [&prep](double s, int m) {
    SpectrumPoint pt;
    pt.s = s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(prep.hamiltonian(s));
    if (es.info() != Eigen::Success)
      throw NumericError("symmetric_prep_gap: dense solver failed");
    const int mm = std::min(m, prep.n + 1);
    for (int i = 0; i < mm; ++i) {
      pt.energies.push_back(es.eigenvalues()(i));
      pt.eigenvectors.emplace_back(es.eigenvectors().col(i));
      pt.residuals.push_back(0.0);
    }
    return pt;
  };
  auto matel = [&dh](const SpectrumPoint& pt) {
    if (pt.eigenvectors.size() < 2) return 0.0;
    return std::abs(pt.eigenvectors[1].dot(dh * pt.eigenvectors[0]));
  };
  return detail::scan_gap_family(point_at, matel, opts);
}

void write_prep_gap_csv(const GapReport& report, std::ostream& os) {
  if (report.rows.empty()) return;
  os << "s";
  for (std::size_t i = 0; i < report.rows.front().energies.size(); ++i) os << ",E_" << i;
  os << ",gap\n";
  for (const auto& row : report.rows) {
    os << format_double(row.s);
    for (double e : row.energies) os << "," << format_double(e);
    os << "," << format_double(row.gap) << "\n";
  }
}

}  // namespace aqc
