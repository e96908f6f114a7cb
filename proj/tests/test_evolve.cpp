#include "doctest.h"

#include <cmath>
#include <complex>
#include <memory>

#include "aqc/evolve.hpp"
#include "aqc/experiment.hpp"
#include "aqc/graph.hpp"

using namespace aqc;

namespace {

struct Instance {
  Graph g;
  InstanceClassification cls;
  std::shared_ptr<const WeightKBasis> basis;
  std::unique_ptr<SubspaceHamiltonian> ham;
};

Instance unique_instance(int n, std::uint64_t stream) {
  Instance inst;
  SampledInstance s = sample_until(n, {std::nullopt, true}, stream);
  inst.g = std::move(s.graph);
  inst.cls = std::move(s.cls);
  inst.basis = std::make_shared<const WeightKBasis>(n, inst.cls.max_clique_size);
  inst.ham = std::make_unique<SubspaceHamiltonian>(inst.g, inst.basis);
  return inst;
}

}  // namespace

TEST_SUITE("evolve") {

TEST_CASE("initial state is the uniform weight-k superposition") {
  const WeightKBasis basis(15, 5);
  const StateVector psi = initial_state(basis);
  REQUIRE(psi.amp.size() == 3003);
  for (const auto& a : psi.amp) {
    CHECK(a.real() == doctest::Approx(1.0 / std::sqrt(3003.0)).epsilon(1e-14));
    CHECK(a.imag() == 0.0);
  }
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("T=0 returns the initial state and its measurement probability") {
  Instance inst = unique_instance(8, 2024);
  const StateVector psi0 = initial_state(*inst.basis);
  EvolutionConfig cfg;
  cfg.T = 0.0;
  const EvolutionResult r = evolve(*inst.ham, cfg, psi0);
  CHECK(r.final_state.amp == psi0.amp);
  const double expect = static_cast<double>(inst.cls.cliques_at_max.size()) /
                        static_cast<double>(inst.basis->dim());
  CHECK(r.success_probability == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("complete graph succeeds at any run time") {
  const Graph g = Graph::complete(7);
  auto basis = std::make_shared<const WeightKBasis>(7, 3);
  const SubspaceHamiltonian ham(g, basis);
  EvolutionConfig cfg;
  cfg.T = 3.0;
  const EvolutionResult r = evolve(ham, cfg, initial_state(*basis));
  CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adiabatic limit: slow evolution tracks the ground state") {
  Instance inst = unique_instance(8, 5005);
  EvolutionConfig cfg;
  cfg.T = 200.0;
  const EvolutionResult r = evolve(*inst.ham, cfg, initial_state(*inst.basis));
  CHECK_FALSE(r.failed);
  CHECK(r.success_probability > 0.9);
  CHECK(r.norm_drift < 1e-6);
}

TEST_CASE("determinism: identical runs produce identical amplitudes") {
  Instance inst = unique_instance(7, 31);
  EvolutionConfig cfg;
  cfg.T = 12.5;
  const EvolutionResult a = evolve(*inst.ham, cfg, initial_state(*inst.basis));
  const EvolutionResult b = evolve(*inst.ham, cfg, initial_state(*inst.basis));
  REQUIRE(a.final_state.amp.size() == b.final_state.amp.size());
  for (std::size_t i = 0; i < a.final_state.amp.size(); ++i)
    CHECK(a.final_state.amp[i] == b.final_state.amp[i]);
  CHECK(a.steps_accepted == b.steps_accepted);
  CHECK(a.steps_rejected == b.steps_rejected);
}

TEST_CASE("global phase of the initial state is irrelevant") {
  Instance inst = unique_instance(7, 99);
  EvolutionConfig cfg;
  cfg.T = 8.0;
  StateVector psi0 = initial_state(*inst.basis);
  const EvolutionResult a = evolve(*inst.ham, cfg, psi0);
  const std::complex<double> phase{std::cos(0.7), std::sin(0.7)};
  for (auto& amp : psi0.amp) amp *= phase;
  const EvolutionResult b = evolve(*inst.ham, cfg, psi0);
  CHECK(std::abs(a.success_probability - b.success_probability) < 1e-12);
  for (std::size_t i = 0; i < a.final_state.amp.size(); ++i)
    CHECK(std::abs(b.final_state.amp[i] - phase * a.final_state.amp[i]) < 1e-9);
}

TEST_CASE("rotating frame changes step counts, not the state") {
  Instance inst = unique_instance(8, 640);
  EvolutionConfig on;
  on.T = 15.0;
  EvolutionConfig off = on;
  off.rotating_frame = false;
  const EvolutionResult a = evolve(*inst.ham, on, initial_state(*inst.basis));
  const EvolutionResult b = evolve(*inst.ham, off, initial_state(*inst.basis));
  CHECK(std::abs(a.success_probability - b.success_probability) < 1e-7);
  CHECK(a.steps_accepted < b.steps_accepted);
  for (std::size_t i = 0; i < a.final_state.amp.size(); ++i)
    CHECK(std::abs(a.final_state.amp[i] - b.final_state.amp[i]) < 1e-6);
}

TEST_CASE("tolerance robustness near the defaults") {
  Instance inst = unique_instance(10, 12);
  EvolutionConfig loose;
  loose.T = 10.0;
  EvolutionConfig tight = loose;
  tight.rel_tol = tight.abs_tol = 1e-11;
  const EvolutionResult a = evolve(*inst.ham, loose, initial_state(*inst.basis));
  const EvolutionResult b = evolve(*inst.ham, tight, initial_state(*inst.basis));
  CHECK(std::abs(a.success_probability - b.success_probability) < 1e-5);
  CHECK(b.norm_drift <= a.norm_drift + 1e-12);
}

TEST_CASE("reference propagator: identity at T=0 and second-order convergence") {
  Instance inst = unique_instance(6, 8);
  const StateVector psi0 = initial_state(*inst.basis);
  const StateVector same = reference_evolve(*inst.ham, 0.0, psi0, 10);
  CHECK(same.amp == psi0.amp);

  EvolutionConfig tight;
  tight.T = 20.0;
  tight.rel_tol = tight.abs_tol = 1e-12;
  const EvolutionResult truth = evolve(*inst.ham, tight, psi0);
  auto disagreement = [&](int steps) {
    const StateVector ref = reference_evolve(*inst.ham, 20.0, psi0, steps);
    double err = 0.0;
    for (std::size_t i = 0; i < ref.amp.size(); ++i)
      err = std::max(err, std::abs(ref.amp[i] - truth.final_state.amp[i]));
    return err;
  };
  const double e1 = disagreement(400);
  const double e2 = disagreement(800);
  CHECK(e2 < e1 / 3.5);  // halving the step quarters-or-better the error
}

TEST_CASE("adaptive and reference integrations agree") {
  for (std::uint64_t stream : {7ull, 21ull, 900ull}) {
    Instance inst = unique_instance(7, stream);
    const StateVector psi0 = initial_state(*inst.basis);
    EvolutionConfig cfg;
    cfg.T = 20.0;
    const EvolutionResult adaptive = evolve(*inst.ham, cfg, psi0);
    const StateVector ref = reference_evolve(*inst.ham, 20.0, psi0, 40000);
    const double p_ref = success_probability(*inst.ham, ref);
    CHECK(std::abs(adaptive.success_probability - p_ref) < 1e-6);
  }
}

TEST_CASE("step budget exhaustion is flagged, not silent") {
  Instance inst = unique_instance(8, 3);
  EvolutionConfig cfg;
  cfg.T = 50.0;
  cfg.max_steps = 10;
  const EvolutionResult r = evolve(*inst.ham, cfg, initial_state(*inst.basis));
  CHECK(r.failed);
}

TEST_CASE("input validation") {
  Instance inst = unique_instance(6, 4);
  StateVector bad;
  bad.amp.assign(inst.basis->dim() + 1, {0.0, 0.0});
  EvolutionConfig cfg;
  cfg.T = 1.0;
  CHECK_THROWS_AS(evolve(*inst.ham, cfg, bad), std::invalid_argument);
  EvolutionConfig negative;
  negative.T = -1.0;
  CHECK_THROWS_AS(evolve(*inst.ham, negative, initial_state(*inst.basis)),
                  std::invalid_argument);
  CHECK_THROWS_AS(reference_evolve(*inst.ham, 1.0, initial_state(*inst.basis), 0),
                  std::invalid_argument);
}

}  // TEST_SUITE
