#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinoptics/coupled_label.hpp"
#include "spinoptics/half_int.hpp"
#include "spinoptics/state_vector.hpp"

namespace spinoptics {

/// Direction of a half-step: J = j + 1/2 (up) or J = j - 1/2 (down) for the
/// coupled spin, m2 = +1/2 (up) or -1/2 (down) for the added qubit.
enum class Sign { down = -1, up = +1 };

/// Clebsch-Gordan coefficient <j, m_total - m2; 1/2, m2 | j +- 1/2, m_total>
/// for coupling one spin-1/2 onto a spin j, in the Condon-Shortley phase
/// convention. All sign choices of the library trace back to this function.
inline double cg_coefficient(HalfInt j, HalfInt m_total, Sign delta_j, Sign m2) {
  const int twoj = j.twice();
  const int twom = m_total.twice();
  if (twoj < 0) throw std::domain_error("cg_coefficient: j must be nonnegative");
  if (delta_j == Sign::down && twoj < 1)
    throw std::domain_error("cg_coefficient: J = j - 1/2 requires j >= 1/2");
  if (std::abs(twom) > twoj + 1)
    throw std::domain_error("cg_coefficient: |m_total| exceeds j + 1/2");
  if (((twom + twoj + 1) % 2) != 0)
    throw std::domain_error("cg_coefficient: m_total has the wrong parity for j");
  const int twom1 = twom - static_cast<int>(m2);
  if (std::abs(twom1) > twoj)
    throw std::domain_error("cg_coefficient: |m_total - m2| exceeds j");

  // (j +- m_total + 1/2) / (2j + 1), in doubled-integer arithmetic.
  const double plus = static_cast<double>(twoj + twom + 1) / (2.0 * (twoj + 1));
  const double minus = static_cast<double>(twoj - twom + 1) / (2.0 * (twoj + 1));
  if (delta_j == Sign::up) return m2 == Sign::up ? std::sqrt(plus) : std::sqrt(minus);
  return m2 == Sign::up ? -std::sqrt(minus) : std::sqrt(plus);
}

namespace detail {

inline std::vector<double> reference_amplitudes(const std::vector<HalfInt>& spins,
                                                std::size_t level, int twom,
                                                std::map<std::pair<std::size_t, int>,
                                                         std::vector<double>>& memo) {
  if (auto it = memo.find({level, twom}); it != memo.end()) return it->second;
  std::vector<double> amps(std::size_t{1} << level, 0.0);
  if (level == 1) {
    // |1/2; +1/2> = |+> (index 0), |1/2; -1/2> = |-> (index 1).
    amps[twom == 1 ? 0 : 1] = 1.0;
  } else {
    const HalfInt j = spins[level - 2];
    const Sign delta = spins[level - 1] > j ? Sign::up : Sign::down;
    for (Sign m2 : {Sign::up, Sign::down}) {
      const int twom1 = twom - static_cast<int>(m2);
      if (std::abs(twom1) > j.twice()) continue;
      const double c = cg_coefficient(j, HalfInt::from_twice(twom), delta, m2);
      if (c == 0.0) continue;
      const auto child = reference_amplitudes(spins, level - 1, twom1, memo);
      const std::size_t bit = m2 == Sign::up ? 0 : 1;  // |+> appends bit 0
      for (std::size_t i = 0; i < child.size(); ++i) amps[i * 2 + bit] += c * child[i];
    }
  }
  memo[{level, twom}] = amps;
  return amps;
}

}  // namespace detail

/// Builds the reference eigenstate for a coupled-basis label by recursive
/// Clebsch-Gordan coupling, qubit 1 in the most significant bit. Amplitudes
/// are real in this convention.
inline StateVector build_reference_state(const CoupledLabel& label) {
  require_valid(label);
  const int n = static_cast<int>(label.n_qubits());
  if (n > 16) throw std::domain_error("build_reference_state supports 1 <= n <= 16");
  std::map<std::pair<std::size_t, int>, std::vector<double>> memo;
  const auto amps = detail::reference_amplitudes(label.history.spins,
                                                 static_cast<std::size_t>(n),
                                                 label.m.twice(), memo);
  StateVector state(n);
  for (std::size_t i = 0; i < amps.size(); ++i) state[i] = amps[i];
  state.normalize();
  return state;
}

}  // namespace spinoptics
