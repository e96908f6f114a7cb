#include "aqc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "aqc/errors.hpp"
#include "aqc/rng.hpp"
#include "aqc/util.hpp"

namespace aqc {

namespace {

void fix_phase(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (v(imax) < 0.0) v = -v;
}

using Matvec = std::function<void(std::span<const double>, std::span<double>)>;

struct LanczosResult {
  std::vector<double> values;
  std::vector<Eigen::VectorXd> vectors;
  std::vector<double> residuals;
  bool converged = false;
};

// Krylov subspace built Lanczos-style with full reorthogonalization, with
// eigenpairs extracted by explicit Rayleigh-Ritz on T = V^T H V rather than
// the three-term recurrence: once heavy reorthogonalization sets in, the
// recurrence tridiagonal stops representing the projected operator, while
// Ritz values of the explicit projection always interlace the true spectrum.
// A vanishing new direction closes an invariant subspace; the build then
// restarts from a fresh vector orthogonal to everything so far, which also
// resolves degenerate ground states. Convergence is certified by explicit
// residuals ||Hv - Ev||.
LanczosResult lanczos_lowest(const Matvec& op, std::size_t dim, int m, int max_iter,
                             double rel_tol) {
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<Eigen::VectorXd> basis;  // orthonormal, accumulated across restarts
  std::vector<double> work_in(dim), work_out(dim);

  auto apply_op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (std::size_t i = 0; i < dim; ++i) work_in[i] = x(static_cast<Eigen::Index>(i));
    op(work_in, work_out);
    y.resize(d);
    for (std::size_t i = 0; i < dim; ++i) y(static_cast<Eigen::Index>(i)) = work_out[i];
  };

  const int cap = std::min<int>(max_iter, static_cast<int>(dim));
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(cap, cap);  // V^T H V
  LanczosResult res;
  double scale = 1.0;

  // Ritz pairs of the current projection with explicit residuals; fills
  // `res` and reports whether the lowest m are certified.
  Eigen::VectorXd hv(d), w(d);
  auto extract = [&](bool full_vectors) {
    const auto j = static_cast<Eigen::Index>(basis.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj.topLeftCorner(j, j));
    scale = std::max({scale, std::abs(es.eigenvalues()(0)),
                      std::abs(es.eigenvalues()(j - 1))});
    res.values.clear();
    res.vectors.clear();
    res.residuals.clear();
    const int count = std::min<int>(m, static_cast<int>(j));
    bool good = count == m;
    for (int i = 0; i < count; ++i) {
      Eigen::VectorXd rv = Eigen::VectorXd::Zero(d);
      for (Eigen::Index l = 0; l < j; ++l) rv += es.eigenvectors()(l, i) * basis[static_cast<std::size_t>(l)];
      rv.normalize();
      apply_op(rv, hv);
      const double value = es.eigenvalues()(i);
      const double resid = (hv - value * rv).norm();
      good = good && resid <= rel_tol * std::max(scale, 1.0) * 100.0;
      res.values.push_back(value);
      if (full_vectors) {
        fix_phase(rv);
        res.vectors.push_back(std::move(rv));
      }
      res.residuals.push_back(resid);
    }
    return good;
  };

  int iters = 0;
  std::uint64_t restart = 0;
  bool need_start = true;
  while (iters < cap) {
    if (need_start) {
      Eigen::VectorXd v(d);
      for (Eigen::Index i = 0; i < d; ++i)
        v(i) = rng::uniform01(0x4C414E435A4F53ull + restart, static_cast<std::uint64_t>(i)) -
               0.5;
      ++restart;
      for (const auto& u : basis) v -= u.dot(v) * u;
      if (v.norm() < 1e-8) continue;  // start vector inside the span, redraw
      v.normalize();
      basis.push_back(std::move(v));
      need_start = false;
    }

    apply_op(basis.back(), hv);
    ++iters;
    const auto j = static_cast<Eigen::Index>(basis.size()) - 1;
    w = hv;
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double c = basis[static_cast<std::size_t>(i)].dot(hv);
      proj(i, j) = proj(j, i) = c;
      w -= c * basis[static_cast<std::size_t>(i)];
    }
    for (const auto& u : basis) w -= u.dot(w) * u;  // second orthogonalization pass
    const double b = w.norm();

    const bool closed = b < 1e-10 * std::max(scale, 1.0);
    const bool exhausted = iters >= cap || basis.size() == dim;
    if (iters % 16 == 0 || closed || exhausted) {
      if (extract(true)) {
        res.converged = true;
        return res;
      }
    }
    if (exhausted) break;
    if (closed) {
      need_start = true;  // invariant subspace closed, deflated restart
    } else {
      basis.push_back(w / b);
    }
  }

  res.converged = extract(true);
  return res;
}

}  // namespace

SpectrumPoint instantaneous_spectrum(const SubspaceHamiltonian& h, double s, int m,
                                     const SpectrumOptions& opts) {
  const std::size_t dim = h.dim();
  if (m < 1 || static_cast<std::size_t>(m) > dim)
    throw std::invalid_argument("instantaneous_spectrum: need 1 <= m <= dim");
  SpectrumPoint pt;
  pt.s = s;
  if (dim <= opts.dense_dim_max) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense_matrix(s, opts.dense_dim_max));
    if (es.info() != Eigen::Success)
      throw NumericError("instantaneous_spectrum: dense solver failed");
    for (int i = 0; i < m; ++i) {
      pt.energies.push_back(es.eigenvalues()(i));
      if (opts.want_vectors) {
        Eigen::VectorXd v = es.eigenvectors().col(i);
        fix_phase(v);
        pt.eigenvectors.push_back(std::move(v));
      }
      pt.residuals.push_back(0.0);
    }
    return pt;
  }
  Matvec op = [&h, s](std::span<const double> in, std::span<double> out) {
    h.apply(s, in, out);
  };
  LanczosResult lr = lanczos_lowest(op, dim, m, opts.lanczos_max_iter, opts.lanczos_tol);
  pt.converged = lr.converged;
  pt.energies = lr.values;
  pt.residuals = lr.residuals;
  if (opts.want_vectors) pt.eigenvectors = lr.vectors;
  if (!lr.converged) {
    std::string msg = "instantaneous_spectrum: Lanczos did not converge; residuals:";
    for (double r : lr.residuals) msg += " " + format_double(r);
    throw NumericError(msg);
  }
  return pt;
}

namespace detail {

GapReport scan_gap_family(const std::function<SpectrumPoint(double, int)>& point_at,
                          const std::function<double(const SpectrumPoint&)>& matrix_element,
                          const GapScanOptions& opts) {
  if (opts.grid_points < 3)
    throw std::invalid_argument("gap scan: need at least 3 grid points");
  const int m = std::max(2, opts.csv_levels);
  GapReport rep;
  rep.g = std::numeric_limits<double>::infinity();

  auto visit = [&](double s, bool record_row) {
    SpectrumPoint pt = point_at(s, m);
    const double gap = pt.energies[1] - pt.energies[0];
    const double me = matrix_element(pt);
    if (gap < opts.degeneracy_eps && !rep.degenerate) {
      rep.degenerate = true;
      rep.degenerate_at = s;
    }
    if (gap < rep.g) {
      rep.g = gap;
      rep.s_star = s;
    }
    rep.e_script = std::max(rep.e_script, me);
    if (record_row) {
      GapScanRow row;
      row.s = s;
      row.energies.assign(pt.energies.begin(),
                          pt.energies.begin() + std::min<std::size_t>(
                                                    pt.energies.size(),
                                                    static_cast<std::size_t>(opts.csv_levels)));
      row.gap = gap;
      row.matrix_element = me;
      rep.rows.push_back(std::move(row));
    }
    return gap;
  };

  const int g = opts.grid_points;
  std::vector<double> gaps(static_cast<std::size_t>(g));
  int imin = 0;
  for (int i = 0; i < g; ++i) {
    const double s = static_cast<double>(i) / (g - 1);
    gaps[static_cast<std::size_t>(i)] = visit(s, true);
    if (gaps[static_cast<std::size_t>(i)] < gaps[static_cast<std::size_t>(imin)]) imin = i;
  }

  if (opts.refine && !rep.degenerate) {
    // golden-section around the smallest bracketed gap
    double lo = std::max(0.0, (imin - 1.0) / (g - 1));
    double hi = std::min(1.0, (imin + 1.0) / (g - 1));
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = visit(x1, false);
    double f2 = visit(x2, false);
    while (hi - lo > opts.refine_ds) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = visit(x1, false);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = visit(x2, false);
      }
    }
  }

  rep.bound = rep.g > 0.0 ? rep.e_script / (rep.g * rep.g)
                          : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace detail

GapReport gap_scan(const SubspaceHamiltonian& h, const GapScanOptions& opts) {
  if (h.dim() < 2) throw std::invalid_argument("gap_scan: dim must be >= 2");
  SpectrumOptions sopts = opts.spectrum;
  sopts.want_vectors = true;
  auto point_at = [&h, &sopts](double s, int m) {
    return instantaneous_spectrum(h, s, m, sopts);
  };
  // dH/ds = H_P - H_B = H(1) - H(0)
  const std::size_t dim = h.dim();
  auto matel = [&h, dim](const SpectrumPoint& pt) {
    if (pt.eigenvectors.size() < 2) return 0.0;
    std::vector<double> v0(dim), w1(dim), w0(dim);
    for (std::size_t i = 0; i < dim; ++i)
      v0[i] = pt.eigenvectors[0](static_cast<Eigen::Index>(i));
    h.apply(1.0, v0, w1);
    h.apply(0.0, v0, w0);
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      acc += pt.eigenvectors[1](static_cast<Eigen::Index>(i)) * (w1[i] - w0[i]);
    return std::abs(acc);
  };
  return detail::scan_gap_family(point_at, matel, opts);
}

void write_gap_csv(const GapReport& report, std::ostream& os) {
  if (report.rows.empty()) return;
  os << "s";
  for (std::size_t i = 0; i < report.rows.front().energies.size(); ++i) os << ",E_" << i;
  os << ",gap,matrix_element\n";
  for (const auto& row : report.rows) {
    os << format_double(row.s);
    for (double e : row.energies) os << "," << format_double(e);
    os << "," << format_double(row.gap) << "," << format_double(row.matrix_element) << "\n";
  }
}

}  // namespace aqc
