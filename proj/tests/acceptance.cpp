// Acceptance suite: the end-to-end bar the library has to clear, one
// pass/fail line per criterion. Runs without any test framework so the
// output stays readable in CI logs; exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spinoptics/spinoptics.hpp"
#include "support/choosers.hpp"
#include "support/compare.hpp"
#include "support/operators.hpp"
#include "support/physical_oracle.hpp"
#include "support/random_setups.hpp"

using namespace spinoptics;

namespace {

constexpr double fidelity_tol = 1e-9;         // per-criterion fidelity floor
constexpr double gram_tol = 1e-9;             // orthonormality residual
constexpr double oracle_coeff_tol = 1e-10;    // simulate vs bruteforce
constexpr double oracle_state_fidelity = 1e-10;
constexpr double oracle_prob_rel = 1e-9;      // physical oracle probability
constexpr double scaling_rel = 1e-12;         // efficiency power law
constexpr double choice_tol = 1e-10;          // chooser-variant state gap
constexpr double eigen_tol = 1e-10;           // spin-operator residuals

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (detail.empty()) detail = why;
  }
};

Outcome doublet_projection() {
  Outcome o;
  const auto label = parse_label("1/2,1,1/2;+1/2");
  const auto sim = simulate(compile_setup(label).setup);
  if (!sim.projection.exact) o.fail("expected exact integer coefficients");
  const std::vector<std::pair<const char*, std::int64_t>> expected{
      {"++-", 2}, {"+-+", -1}, {"-++", -1}};
  if (sim.projection.exact_coefficients.size() != expected.size())
    o.fail("expected exactly three nonzero coefficients");
  for (const auto& [bits, value] : expected) {
    const auto it = sim.projection.exact_coefficients.find(bitstring_from_string(bits));
    if (it == sim.projection.exact_coefficients.end() ||
        !(it->second == ExactComplex{value, 0}))
      o.fail(std::string("coefficient of ") + bits + " is not " + std::to_string(value));
  }
  const double f = fidelity(build_reference_state(label), sim.state);
  if (!(f >= 1.0 - fidelity_tol)) o.fail("fidelity " + std::to_string(f));
  return o;
}

Outcome two_qubit_table() {
  Outcome o;
  for (const auto& label : enumerate_coupled_basis(2)) {
    const auto report = verify_label(label);
    if (!report.exact_match) o.fail("label " + format_label(label) + " not exact");
  }
  const auto singlet = compile_setup(parse_label("1/2,0;0")).setup;
  int pi_fibers = 0;
  for (const auto& f : singlet.fibers) pi_fibers += (f.phase == Phase::pi());
  if (pi_fibers != 1)
    o.fail("singlet setup has " + std::to_string(pi_fibers) + " pi fibers, expected 1");
  return o;
}

Outcome w_state() {
  Outcome o;
  const auto compiled = compile_setup(parse_label("1/2,1,3/2;+1/2")).setup;
  if (compiled.fibers.size() != 9) o.fail("expected the all-to-all 3x3 wiring");
  for (const auto& f : compiled.fibers)
    if (!(f.phase == Phase::zero())) o.fail("expected a phase-free setup");

  StateVector w(3);
  const double amp = 1.0 / std::sqrt(3.0);
  for (const char* bits : {"++-", "+-+", "-++"}) w[bitstring_from_string(bits)] = amp;
  const double f = fidelity(w, simulate(compiled).state);
  if (!(f >= 1.0 - fidelity_tol)) o.fail("fidelity against W is " + std::to_string(f));
  return o;
}

Outcome full_basis_sweep() {
  Outcome o;
  for (int n = 1; n <= 6; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto sweep = sweep_basis(n);
    if (!sweep.all_exact())
      o.fail("n=" + std::to_string(n) + ": " + std::to_string(sweep.summary.exact_count) +
             "/" + std::to_string(sweep.reports.size()) + " exact");

    std::vector<StateVector> states;
    for (const auto& label : enumerate_coupled_basis(n))
      states.push_back(simulate(compile_setup(label).setup).state);
    double worst = 0;
    for (std::size_t a = 0; a < states.size(); ++a)
      for (std::size_t b = a; b < states.size(); ++b) {
        const double expect = a == b ? 1.0 : 0.0;
        worst = std::max(worst,
                         std::abs(std::abs(inner_product(states[a], states[b])) - expect));
      }
    if (worst > gram_tol)
      o.fail("n=" + std::to_string(n) + ": orthonormality residual " + std::to_string(worst));

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (n == 6 && seconds >= 60.0)
      o.fail("n=6 sweep took " + std::to_string(seconds) + " s, budget 60 s");
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (int n = 1; n <= 7; ++n) {
    for (const auto& label : enumerate_coupled_basis(n)) {
      const auto setup = compile_setup(label).setup;
      const auto fast = simulate(setup).projection;
      const auto slow = simulate_bruteforce(setup);
      if (!(fast.exact_coefficients == slow.exact_coefficients)) {
        o.fail("integer mismatch on " + format_label(label));
        return o;
      }
    }
  }
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto setup = testing::random_valid_setup(rng, n, true);
    const auto fast = simulate(setup).projection;
    const auto slow = simulate_bruteforce(setup);
    const double gap = testing::max_coefficient_difference(fast, slow);
    if (gap > oracle_coeff_tol) {
      o.fail("random trial " + std::to_string(trial) + ": coefficient gap " +
             std::to_string(gap));
      return o;
    }
  }
  return o;
}

Outcome physical_oracle_agreement() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& label : enumerate_coupled_basis(n)) {
      const auto setup = compile_setup(label).setup;
      const auto sim = simulate(setup);
      const auto oracle = testing::physical_emission_oracle(setup);
      if (oracle.null_event) {
        o.fail(format_label(label) + ": oracle reports a null event");
        continue;
      }
      const double f = fidelity(oracle.state, sim.state);
      if (!(f >= 1.0 - oracle_state_fidelity))
        o.fail(format_label(label) + ": state fidelity " + std::to_string(f));
      const double p = success_probability(setup);
      const double rel = std::abs(p - oracle.event_probability) / oracle.event_probability;
      if (rel > oracle_prob_rel)
        o.fail(format_label(label) + ": probability off by " + std::to_string(rel));
    }
  }
  // The frozen spot values, reproduced by the independent model.
  const std::vector<std::pair<const char*, double>> spots{
      {"1/2,1;+1", 1.0 / 4.0}, {"1/2,0;0", 1.0 / 8.0}, {"1/2,1,1/2;+1/2", 1.0 / 24.0}};
  for (const auto& [text, expected] : spots) {
    const auto setup = compile_setup(parse_label(text)).setup;
    const double modeled = testing::physical_emission_oracle(setup).event_probability;
    if (std::abs(modeled - expected) / expected > oracle_prob_rel)
      o.fail(std::string(text) + ": oracle probability " + std::to_string(modeled) +
             " differs from " + std::to_string(expected));
  }
  return o;
}

Outcome efficiency_scaling() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& label : enumerate_coupled_basis(n)) {
      const auto setup = compile_setup(label).setup;
      const double base = success_probability(setup, 1.0);
      for (const double eta : {0.5, 0.1}) {
        const double expected = std::pow(eta, n) * base;
        const double actual = success_probability(setup, eta);
        if (std::abs(actual - expected) / expected > scaling_rel) {
          o.fail(format_label(label) + " at eta=" + std::to_string(eta));
          return o;
        }
      }
    }
  }
  return o;
}

Outcome choice_invariance() {
  Outcome o;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& label : enumerate_coupled_basis(n)) {
      const StateVector base = simulate(compile_setup(label).setup).state;
      testing::for_each_chooser_variant(label, [&](const CompileResult& variant) {
        const StateVector alt = simulate(variant.setup).state;
        if (testing::max_state_difference(base, alt) > choice_tol)
          o.fail(format_label(label) + ": a tie-break variant changed the state");
      });
    }
  }
  return o;
}

Outcome spin_operator_checks() {
  Outcome o;
  for (int twoj = 1; twoj <= 8; ++twoj) {
    const HalfInt j = HalfInt::from_twice(twoj);
    for (int twom = -twoj + 1; twom <= twoj - 1; twom += 2) {
      const HalfInt m = HalfInt::from_twice(twom);
      const double a = cg_coefficient(j, m, Sign::up, Sign::up);
      const double b = cg_coefficient(j, m, Sign::up, Sign::down);
      const double c = cg_coefficient(j, m, Sign::down, Sign::up);
      const double d = cg_coefficient(j, m, Sign::down, Sign::down);
      if (std::abs(a * a + b * b - 1.0) > eigen_tol ||
          std::abs(c * c + d * d - 1.0) > eigen_tol || std::abs(a * c + b * d) > eigen_tol)
        o.fail("coupling block at 2j=" + std::to_string(twoj) +
               ", 2m=" + std::to_string(twom) + " is not orthogonal");
    }
  }
  for (int n = 1; n <= 6; ++n) {
    for (const auto& label : enumerate_coupled_basis(n)) {
      const StateVector v = build_reference_state(label);
      if (testing::sz_eigenvalue_error(v, label.m) > eigen_tol)
        o.fail(format_label(label) + ": Sz residual too large");
      const StateVector s2 = testing::apply_total_spin_squared(v);
      const double s = label.history.spins.back().value();
      const double eigen = s * (s + 1);
      for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(s2[i] - eigen * v[i]) > eigen_tol) {
          o.fail(format_label(label) + ": S^2 residual too large");
          break;
        }
      }
    }
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
  double budget_seconds;  // 0 = untimed
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "three-qubit doublet projects to integer coefficients (2,-1,-1)",
       doublet_projection, 1.0},
      {2, "all four two-qubit labels verify; singlet carries one pi fiber",
       two_qubit_table, 1.0},
      {3, "the symmetric three-qubit label compiles all-to-all and yields W", w_state, 0.0},
      {4, "full-basis sweeps to n=6 verify exactly and stay orthonormal",
       full_basis_sweep, 0.0},
      {5, "permanent and permutation simulators agree on compiled and random setups",
       oracle_equivalence, 0.0},
      {6, "the emission-superposition model confirms states and probabilities",
       physical_oracle_agreement, 0.0},
      {7, "success probability follows the eta^n power law", efficiency_scaling, 0.0},
      {8, "every tie-break choice yields the same projected state", choice_invariance, 0.0},
      {9, "coupling blocks stay orthogonal; references carry their eigenvalues",
       spin_operator_checks, 0.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criterion.budget_seconds > 0 && seconds >= criterion.budget_seconds)
      outcome.fail("took " + std::to_string(seconds) + " s, budget " +
                   std::to_string(criterion.budget_seconds) + " s");

    std::printf("%s criterion %d: %s [%.3f s]%s%s\n", outcome.ok ? "PASS" : "FAIL",
                criterion.id, criterion.name, seconds, outcome.detail.empty() ? "" : " - ",
                outcome.detail.c_str());
    failures += outcome.ok ? 0 : 1;
  }

  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    return 0;
  }
  std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
  return 1;
}
