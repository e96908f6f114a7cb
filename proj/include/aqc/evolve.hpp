#pragma once

#include <cstdint>

#include "aqc/hamiltonian.hpp"
#include "aqc/state.hpp"

namespace aqc {

struct EvolutionConfig {
  double T = 0.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  std::uint64_t max_steps = 20'000'000;
  double initial_step = 0.0;  // 0 -> T/1000
  /// Integrate in the frame rotating with E_ref(s) = -(1-s) k(n-k), the
  /// s=0 ground energy tracked linearly to 0 at s=1. The substitution is
  /// exact: the accumulated phase is restored analytically at t=T, so the
  /// result is the same state with far fewer steps spent on the overall
  /// phase rotation.
  bool rotating_frame = true;
};

struct EvolutionResult {
  StateVector final_state;
  double success_probability = 0.0;
  double norm_drift = 0.0;  // |1 - ||psi(T)|||
  std::uint64_t steps_accepted = 0;
  std::uint64_t steps_rejected = 0;
  bool failed = false;  // max_steps exhausted before reaching T
};

/// Success probability of `psi` against the k-cliques of the instance
/// (the zero-diagonal basis states), measured on psi / ||psi||.
double success_probability(const SubspaceHamiltonian& h, const StateVector& psi);

/// Integrates i dpsi/dt = H(t/T) psi from t=0 to t=T with the Dormand-Prince
/// 5(4) embedded pair: a step is accepted when the embedded error estimate is
/// at most abs_tol + rel_tol * ||psi||; the step factor is
/// 0.9 (tol/err)^{1/5} clamped to [0.2, 5]. No renormalization is performed;
/// the norm drift is reported as an accuracy diagnostic.
EvolutionResult evolve(const SubspaceHamiltonian& h, const EvolutionConfig& cfg,
                       const StateVector& psi0);

/// Independent fixed-step oracle: n_steps midpoint-Hamiltonian dense matrix
/// exponentials, exp(-i h H(s_mid)) applied per step via eigendecomposition.
/// Refuses dim > 1024.
StateVector reference_evolve(const SubspaceHamiltonian& h, double T,
                             const StateVector& psi0, int n_steps);

}  // namespace aqc
