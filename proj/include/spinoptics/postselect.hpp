#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinoptics/detail/format.hpp"
#include "spinoptics/exact_complex.hpp"
#include "spinoptics/optical_setup.hpp"
#include "spinoptics/permanent.hpp"
#include "spinoptics/state_vector.hpp"

namespace spinoptics {

/// Coefficient per detection bitstring of the post-selected coincidence
/// event, before normalization. When every fiber phase is a multiple of pi/2
/// the coefficients are exact integer pairs; otherwise they are doubles.
struct UnnormalizedProjection {
  int n_qubits = 0;
  bool exact = false;
  bool null_postselection = false;
  std::map<std::uint32_t, Amplitude> coefficients;
  std::map<std::uint32_t, ExactComplex> exact_coefficients;  // filled iff exact

  double norm_squared() const {
    double s = 0;
    for (const auto& [bits, c] : coefficients) s += std::norm(c);
    return s;
  }

  /// One line per nonzero coefficient: "bitstring re im", ascending
  /// bitstring, integer parts when exact.
  void to_text(std::ostream& os) const {
    if (exact) {
      for (const auto& [bits, c] : exact_coefficients)
        os << bitstring_to_string(bits, n_qubits) << ' ' << to_string(c) << '\n';
      return;
    }
    for (const auto& [bits, c] : coefficients)
      os << bitstring_to_string(bits, n_qubits) << ' ' << detail::fmt_g(c.real()) << ' '
         << detail::fmt_g(c.imag()) << '\n';
  }

  std::string to_text() const {
    std::ostringstream os;
    to_text(os);
    return os.str();
  }
};

struct SimulationResult {
  UnnormalizedProjection projection;
  StateVector state;
};

namespace detail {

// Emitter i (row) may deliver its photon to detector j (column) under
// bitstring b iff the fiber exists and the detector's polarizer matches the
// bit: a sigma- detection leaves the emitter in |+> (bit 0).
inline bool compatible(const OpticalSetup& setup, std::uint32_t bits, int emitter,
                       int detector) {
  const bool bit =
      (bits >> (setup.n - emitter)) & 1u;  // emitter is 1-based, qubit 1 = MSB
  const Polarizer required = bit ? Polarizer::sigma_plus : Polarizer::sigma_minus;
  return setup.polarizers[static_cast<std::size_t>(detector - 1)] == required;
}

template <typename Scalar, typename AmplitudeOf>
std::map<std::uint32_t, Scalar> projection_by_permanents(const OpticalSetup& setup,
                                                         AmplitudeOf amplitude_of) {
  const int n = setup.n;
  const int n_plus = setup.count(Polarizer::sigma_plus);
  std::map<std::uint32_t, Scalar> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
    // Each sigma+ detection flips one emitter to |->; only bitstrings with
    // exactly as many '-' bits as sigma+ polarizers can occur.
    if (std::popcount(bits) != n_plus) continue;
    SquareMatrix<Scalar> m(n);
    bool feasible = true;
    for (int e = 1; e <= n && feasible; ++e) {
      bool row_nonzero = false;
      for (int d = 1; d <= n; ++d) {
        const Fiber* f = setup.find_fiber(e, d);
        if (f != nullptr && compatible(setup, bits, e, d)) {
          m.at(e - 1, d - 1) = amplitude_of(*f);
          row_nonzero = true;
        }
      }
      feasible = row_nonzero;
    }
    if (!feasible) continue;
    const Scalar coefficient = permanent_ryser(m);
    if (!(coefficient == Scalar(0))) out[bits] = coefficient;
  }
  return out;
}

inline StateVector normalized_state(const UnnormalizedProjection& projection) {
  StateVector state(projection.n_qubits);
  if (projection.null_postselection) return state;
  for (const auto& [bits, c] : projection.coefficients) state[bits] = c;
  state.normalize();
  return state;
}

}  // namespace detail

/// Computes the projected N-qubit state of the coincidence event "each
/// detector registers exactly one photon". The coefficient of bitstring b is
/// the permanent of the polarity-compatible fiber matrix, evaluated by
/// Ryser's formula; exact integer-pair arithmetic is used whenever all fiber
/// phases are multiples of pi/2. An all-zero projection is a reportable
/// outcome (null_postselection), not an error.
inline SimulationResult simulate(const OpticalSetup& setup) {
  if (const auto diagnostics = validate_setup(setup); !diagnostics.empty())
    throw std::domain_error("simulate: invalid setup: " + diagnostics.front().message);

  SimulationResult result;
  UnnormalizedProjection& projection = result.projection;
  projection.n_qubits = setup.n;
  projection.exact = std::all_of(setup.fibers.begin(), setup.fibers.end(),
                                 [](const Fiber& f) { return f.phase.multiple_of_half_pi(); });
  if (projection.exact) {
    projection.exact_coefficients = detail::projection_by_permanents<ExactComplex>(
        setup, [](const Fiber& f) { return f.phase.exact_amplitude(); });
    for (const auto& [bits, c] : projection.exact_coefficients)
      projection.coefficients[bits] = c.to_complex();
  } else {
    projection.coefficients = detail::projection_by_permanents<Amplitude>(
        setup, [](const Fiber& f) { return f.phase.amplitude(); });
    std::erase_if(projection.coefficients,
                  [](const auto& entry) { return std::abs(entry.second) <= 1e-14; });
  }
  projection.null_postselection = projection.coefficients.empty();
  result.state = detail::normalized_state(projection);
  return result;
}

/// Independent oracle for simulate: enumerates all N! emitter-to-detector
/// permutations directly and accumulates each existing assignment's amplitude
/// onto the bitstring its polarizer pattern dictates. Shares only the data
/// types with the permanent-based path. Factorial cost; capped at N <= 10.
inline UnnormalizedProjection simulate_bruteforce(const OpticalSetup& setup) {
  const int n = setup.n;
  if (n < 1) throw std::domain_error("simulate_bruteforce: setup needs n >= 1");
  if (n > 10) throw std::length_error("simulate_bruteforce: factorial enumeration capped at n <= 10");

  UnnormalizedProjection projection;
  projection.n_qubits = n;
  projection.exact = std::all_of(setup.fibers.begin(), setup.fibers.end(),
                                 [](const Fiber& f) { return f.phase.multiple_of_half_pi(); });

  std::vector<int> assignment(static_cast<std::size_t>(n));
  std::iota(assignment.begin(), assignment.end(), 1);
  std::map<std::uint32_t, ExactComplex> exact_acc;
  std::map<std::uint32_t, Amplitude> float_acc;
  do {
    bool exists = true;
    std::uint32_t bits = 0;
    for (int e = 1; e <= n && exists; ++e) {
      const int d = assignment[static_cast<std::size_t>(e - 1)];
      exists = setup.find_fiber(e, d) != nullptr;
      if (setup.polarizers[static_cast<std::size_t>(d - 1)] == Polarizer::sigma_plus)
        bits |= std::uint32_t{1} << (n - e);
    }
    if (!exists) continue;
    if (projection.exact) {
      ExactComplex amp{1, 0};
      for (int e = 1; e <= n; ++e)
        amp *= setup.find_fiber(e, assignment[static_cast<std::size_t>(e - 1)])
                   ->phase.exact_amplitude();
      exact_acc[bits] += amp;
    } else {
      Amplitude amp{1, 0};
      for (int e = 1; e <= n; ++e)
        amp *= setup.find_fiber(e, assignment[static_cast<std::size_t>(e - 1)])
                   ->phase.amplitude();
      float_acc[bits] += amp;
    }
  } while (std::next_permutation(assignment.begin(), assignment.end()));

  if (projection.exact) {
    for (const auto& [bits, c] : exact_acc) {
      if (c.is_zero()) continue;
      projection.exact_coefficients[bits] = c;
      projection.coefficients[bits] = c.to_complex();
    }
  } else {
    for (const auto& [bits, c] : float_acc) {
      if (std::abs(c) <= 1e-14) continue;
      projection.coefficients[bits] = c;
    }
  }
  projection.null_postselection = projection.coefficients.empty();
  return projection;
}

/// Probability of the post-selected coincidence event under the lossless
/// splitter convention: each decay channel carries 1/sqrt(2), each fiber of
/// an emitter 1/sqrt(deg), and each photon is detected with probability eta.
inline double success_probability(const OpticalSetup& setup,
                                  double per_photon_efficiency = 1.0) {
  if (!(per_photon_efficiency > 0.0) || per_photon_efficiency > 1.0)
    throw std::domain_error("success_probability: efficiency must be in (0, 1]");
  const SimulationResult result = simulate(setup);
  double coefficient_norm = 0;
  if (result.projection.exact) {
    std::int64_t exact_norm = 0;
    for (const auto& [bits, c] : result.projection.exact_coefficients)
      exact_norm += c.norm2();
    coefficient_norm = static_cast<double>(exact_norm);
  } else {
    coefficient_norm = result.projection.norm_squared();
  }
  double split = 1.0;
  for (int e = 1; e <= setup.n; ++e) split /= 2.0 * setup.fiber_count(e);
  return std::pow(per_photon_efficiency, setup.n) * coefficient_norm * split;
}

}  // namespace spinoptics
