#include "aqc/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aqc/errors.hpp"

namespace aqc {

namespace {

using Cvec = std::vector<std::complex<double>>;

double vec_norm(const Cvec& v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return std::sqrt(s);
}

bool vec_finite(const Cvec& v) {
  for (const auto& a : v)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  return true;
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat, the embedded error weights (d2 = 0).
constexpr double d1 = 71.0 / 57600, d3 = -71.0 / 16695, d4 = 71.0 / 1920,
                 d5 = -17253.0 / 339200, d6 = 22.0 / 525, d7 = -1.0 / 40;

}  // namespace

double success_probability(const SubspaceHamiltonian& h, const StateVector& psi) {
  const auto& diag = h.problem_diagonal();
  if (psi.amp.size() != diag.size())
    throw std::invalid_argument("success_probability: dimension mismatch");
  double clique_weight = 0.0, total = 0.0;
  for (std::size_t r = 0; r < diag.size(); ++r) {
    const double w = std::norm(psi.amp[r]);
    total += w;
    if (diag[r] == 0) clique_weight += w;
  }
  return total > 0.0 ? clique_weight / total : 0.0;
}

EvolutionResult evolve(const SubspaceHamiltonian& h, const EvolutionConfig& cfg,
                       const StateVector& psi0) {
  const std::size_t dim = h.dim();
  if (psi0.amp.size() != dim)
    throw std::invalid_argument("evolve: initial state does not match the basis");
  if (cfg.T < 0.0) throw std::invalid_argument("evolve: T must be >= 0");
  if (cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0)
    throw std::invalid_argument("evolve: tolerances must be positive");

  EvolutionResult res;
  if (cfg.T == 0.0) {
    res.final_state = psi0;
    res.success_probability = success_probability(h, psi0);
    res.norm_drift = std::abs(1.0 - psi0.norm());
    return res;
  }

  const double T = cfg.T;
  const double e_ref0 = cfg.rotating_frame
                            ? -static_cast<double>(h.basis().degree())
                            : 0.0;  // E_ref(s) = e_ref0 * (1 - s)

  Cvec y = psi0.amp;
  Cvec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  Cvec ytmp(dim), y5(dim), hy(dim);

  // rhs(t, v) = -i (H(t/T) - E_ref(t/T)) v
  auto rhs = [&](double t, const Cvec& v, Cvec& out) {
    const double s = t / T;
    h.apply(s, std::span<const std::complex<double>>(v), std::span<std::complex<double>>(hy));
    const double eref = e_ref0 * (1.0 - s);
    for (std::size_t r = 0; r < dim; ++r) {
      const std::complex<double> w = hy[r] - eref * v[r];
      out[r] = {w.imag(), -w.real()};  // multiply by -i
    }
  };

  double t = 0.0;
  double step = cfg.initial_step > 0.0 ? cfg.initial_step : T / 1000.0;
  step = std::min(step, T);
  rhs(t, y, k1);
  bool fsal_valid = true;

  while (t < T && T - t > T * 1e-15) {
    if (res.steps_accepted + res.steps_rejected >= cfg.max_steps) {
      res.failed = true;
      break;
    }
    const double hstep = std::min(step, T - t);
    if (!(hstep > 0.0) || t + hstep == t)
      throw NumericError("evolve: step size underflow at t = " + std::to_string(t));
    if (!fsal_valid) rhs(t, y, k1);

    for (std::size_t r = 0; r < dim; ++r) ytmp[r] = y[r] + hstep * (a21 * k1[r]);
    rhs(t + c2 * hstep, ytmp, k2);
    for (std::size_t r = 0; r < dim; ++r)
      ytmp[r] = y[r] + hstep * (a31 * k1[r] + a32 * k2[r]);
    rhs(t + c3 * hstep, ytmp, k3);
    for (std::size_t r = 0; r < dim; ++r)
      ytmp[r] = y[r] + hstep * (a41 * k1[r] + a42 * k2[r] + a43 * k3[r]);
    rhs(t + c4 * hstep, ytmp, k4);
    for (std::size_t r = 0; r < dim; ++r)
      ytmp[r] = y[r] + hstep * (a51 * k1[r] + a52 * k2[r] + a53 * k3[r] + a54 * k4[r]);
    rhs(t + c5 * hstep, ytmp, k5);
    for (std::size_t r = 0; r < dim; ++r)
      ytmp[r] = y[r] + hstep * (a61 * k1[r] + a62 * k2[r] + a63 * k3[r] + a64 * k4[r] +
                                a65 * k5[r]);
    rhs(t + hstep, ytmp, k6);
    for (std::size_t r = 0; r < dim; ++r)
      y5[r] = y[r] + hstep * (b1 * k1[r] + b3 * k3[r] + b4 * k4[r] + b5 * k5[r] + b6 * k6[r]);
    rhs(t + hstep, y5, k7);

    double err_sq = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      const std::complex<double> e =
          hstep * (d1 * k1[r] + d3 * k3[r] + d4 * k4[r] + d5 * k5[r] + d6 * k6[r] + d7 * k7[r]);
      err_sq += std::norm(e);
    }
    const double err = std::sqrt(err_sq);
    const double tol = cfg.abs_tol + cfg.rel_tol * vec_norm(y);
    if (!std::isfinite(err))
      throw NumericError("evolve: non-finite error estimate at t = " + std::to_string(t));

    if (err <= tol) {
      t += hstep;
      std::swap(y, y5);
      std::swap(k1, k7);  // FSAL
      fsal_valid = true;
      ++res.steps_accepted;
      if (!vec_finite(y))
        throw NumericError("evolve: non-finite amplitudes at t = " + std::to_string(t));
    } else {
      ++res.steps_rejected;
      fsal_valid = true;  // y unchanged, k1 still holds rhs(t, y)
    }
    const double factor =
        err > 0.0 ? std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0) : 5.0;
    step = hstep * factor;
  }

  if (cfg.rotating_frame) {
    // theta(T) = int_0^T E_ref(t/T) dt = e_ref0 * T / 2; psi = e^{-i theta} phi
    const double theta = e_ref0 * T / 2.0;
    const std::complex<double> phase{std::cos(theta), -std::sin(theta)};
    for (auto& a : y) a *= phase;
  }

  res.final_state.n = psi0.n;
  res.final_state.k = psi0.k;
  res.final_state.amp = std::move(y);
  res.success_probability = success_probability(h, res.final_state);
  res.norm_drift = std::abs(1.0 - res.final_state.norm());
  return res;
}

StateVector reference_evolve(const SubspaceHamiltonian& h, double T, const StateVector& psi0,
                             int n_steps) {
  const std::size_t dim = h.dim();
  if (psi0.amp.size() != dim)
    throw std::invalid_argument("reference_evolve: initial state does not match the basis");
  if (dim > 1024) throw ResourceLimitError("reference_evolve: dim > 1024");
  if (n_steps < 1) throw std::invalid_argument("reference_evolve: n_steps must be >= 1");
  StateVector psi = psi0;
  if (T == 0.0) return psi;

  const Eigen::MatrixXd hb = h.dense_matrix(0.0, 1024);
  const Eigen::MatrixXd hp = h.dense_matrix(1.0, 1024);
  const double dt = T / n_steps;
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd re(d), im(d);
  for (Eigen::Index r = 0; r < d; ++r) {
    re(r) = psi.amp[static_cast<std::size_t>(r)].real();
    im(r) = psi.amp[static_cast<std::size_t>(r)].imag();
  }

  // The Hamiltonian is real, so exp(-i dt H) acts on the real and imaginary
  // parts through the same orthogonal eigenbasis.
  for (int step = 0; step < n_steps; ++step) {
    const double s_mid = (step + 0.5) * dt / T;
    const Eigen::MatrixXd hmid = (1.0 - s_mid) * hb + s_mid * hp;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hmid);
    if (es.info() != Eigen::Success)
      throw NumericError("reference_evolve: eigendecomposition failed");
    const Eigen::MatrixXd& u = es.eigenvectors();
    const Eigen::VectorXd cre = u.transpose() * re;
    const Eigen::VectorXd cim = u.transpose() * im;
    Eigen::VectorXd nre(d), nim(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double angle = es.eigenvalues()(i) * dt;  // (a+bi) e^{-i angle}
      const double ca = std::cos(angle), sa = std::sin(angle);
      nre(i) = cre(i) * ca + cim(i) * sa;
      nim(i) = cim(i) * ca - cre(i) * sa;
    }
    re = u * nre;
    im = u * nim;
  }
  for (Eigen::Index r = 0; r < d; ++r)
    psi.amp[static_cast<std::size_t>(r)] = {re(r), im(r)};
  return psi;
}

}  // namespace aqc
