#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinoptics/clebsch_gordan.hpp"
#include "spinoptics/coupled_label.hpp"
#include "spinoptics/detail/format.hpp"
#include "spinoptics/postselect.hpp"
#include "spinoptics/setup_compiler.hpp"
#include "spinoptics/state_vector.hpp"

namespace spinoptics {

/// |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

struct VerificationReport {
  CoupledLabel label;
  double fidelity = 0.0;
  bool exact_match = false;
  double success_prob = 0.0;
  bool null_projection = false;
};

struct VerifyOptions {
  double tolerance = 1e-10;   // per-amplitude bound for exact_match
  double efficiency = 1.0;    // per-photon detection efficiency
};

namespace detail {

// Multiplies the state by the global phase that makes amplitude k real and
// positive. k is fixed by the reference, so both states align the same slot.
inline StateVector fix_global_phase(const StateVector& state, std::size_t k) {
  StateVector out = state;
  const Amplitude pivot = state[k];
  const double mag = std::abs(pivot);
  if (mag <= 0) return out;
  const Amplitude rotation = std::conj(pivot) / mag;
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] *= rotation;
  return out;
}

inline std::size_t first_nonzero_index(const StateVector& state) {
  for (std::size_t i = 0; i < state.dim(); ++i)
    if (std::abs(state[i]) > 1e-12) return i;
  throw std::domain_error("state vector is numerically zero");
}

}  // namespace detail

/// True iff the states agree amplitude-by-amplitude (within tol) once both
/// are rotated so the reference's first nonzero amplitude is real-positive.
inline bool states_match_exactly(const StateVector& reference, const StateVector& simulated,
                                 double tolerance) {
  if (reference.n_qubits() != simulated.n_qubits()) return false;
  const std::size_t pivot = detail::first_nonzero_index(reference);
  if (std::abs(simulated[pivot]) <= tolerance) return false;
  const StateVector a = detail::fix_global_phase(reference, pivot);
  const StateVector b = detail::fix_global_phase(simulated, pivot);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (std::abs(a[i] - b[i]) > tolerance) return false;
  return true;
}

/// Compiles the label, simulates the post-selection, and compares against the
/// Clebsch-Gordan reference state.
inline VerificationReport verify_label(const CoupledLabel& label,
                                       const VerifyOptions& options = {}) {
  if (const auto feasibility = label_feasibility(label); !feasibility.feasible)
    throw std::domain_error("verify_label: infeasible label: " + feasibility.reason);

  VerificationReport report;
  report.label = label;
  const CompileResult compiled = compile_setup(label);
  const SimulationResult sim = simulate(compiled.setup);
  report.null_projection = sim.projection.null_postselection;
  report.success_prob = success_probability(compiled.setup, options.efficiency);
  if (report.null_projection) return report;
  const StateVector reference = build_reference_state(label);
  report.fidelity = fidelity(reference, sim.state);
  report.exact_match = states_match_exactly(reference, sim.state, options.tolerance);
  return report;
}

struct SweepSummary {
  double min_fidelity = 1.0;
  int exact_count = 0;
  double min_success_prob = 0.0;
  double max_success_prob = 0.0;
};

struct SweepResult {
  int n = 0;
  std::vector<VerificationReport> reports;
  SweepSummary summary;

  bool all_exact() const {
    return summary.exact_count == static_cast<int>(reports.size());
  }
};

/// Verifies every one of the 2^n coupled-basis labels, in enumeration order.
inline SweepResult sweep_basis(int n, const VerifyOptions& options = {}) {
  if (n < 1 || n > 8) throw std::domain_error("sweep_basis supports 1 <= n <= 8");
  SweepResult result;
  result.n = n;
  for (const auto& label : enumerate_coupled_basis(n))
    result.reports.push_back(verify_label(label, options));
  auto& s = result.summary;
  s.min_success_prob = result.reports.front().success_prob;
  s.max_success_prob = result.reports.front().success_prob;
  for (const auto& r : result.reports) {
    s.min_fidelity = std::min(s.min_fidelity, r.fidelity);
    s.exact_count += r.exact_match ? 1 : 0;
    s.min_success_prob = std::min(s.min_success_prob, r.success_prob);
    s.max_success_prob = std::max(s.max_success_prob, r.success_prob);
  }
  return result;
}

/// CSV rows, one per label. Column order is a stable contract.
inline void write_reports_csv(const std::vector<VerificationReport>& reports,
                              std::ostream& os) {
  os << "history,two_m,fidelity,success_prob,exact,null\n";
  for (const auto& r : reports) {
    os << history_key(r.label.history) << ',' << r.label.m.twice() << ','
       << detail::fmt_g(r.fidelity, 12) << ',' << detail::fmt_g(r.success_prob, 12) << ','
       << (r.exact_match ? 1 : 0) << ',' << (r.null_projection ? 1 : 0) << '\n';
  }
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  return {{"label", format_label(r.label)},
          {"history", history_key(r.label.history)},
          {"two_m", r.label.m.twice()},
          {"fidelity", r.fidelity},
          {"success_prob", r.success_prob},
          {"exact", r.exact_match},
          {"null", r.null_projection}};
}

inline std::string sweep_to_json(const SweepResult& sweep) {
  nlohmann::ordered_json doc;
  doc["n"] = sweep.n;
  auto& reports = doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : sweep.reports) reports.push_back(report_to_json(r));
  doc["summary"] = {{"min_fidelity", sweep.summary.min_fidelity},
                    {"exact_count", sweep.summary.exact_count},
                    {"min_success_prob", sweep.summary.min_success_prob},
                    {"max_success_prob", sweep.summary.max_success_prob}};
  return doc.dump(2) + "\n";
}

}  // namespace spinoptics
