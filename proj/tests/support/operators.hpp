#pragma once

// Spin-operator checks used by the tests, built directly from bit operations
// so they stay independent of the Clebsch-Gordan recursion they verify.

#include <bit>
#include <cstdint>

#include "spinoptics/half_int.hpp"
#include "spinoptics/state_vector.hpp"

namespace spinoptics::testing {

// Swaps qubits q1 and q2 (1-based).
inline StateVector apply_swap(const StateVector& v, int q1, int q2) {
  const int n = v.n_qubits();
  StateVector out(n);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const int b1 = n - q1;
    const int b2 = n - q2;
    const std::size_t bit1 = (i >> b1) & 1u;
    const std::size_t bit2 = (i >> b2) & 1u;
    std::size_t j = i;
    j &= ~((std::size_t{1} << b1) | (std::size_t{1} << b2));
    j |= bit2 << b1;
    j |= bit1 << b2;
    out[j] = v[i];
  }
  return out;
}

// Total S^2 from the pairwise decomposition: sum_{i,j} S_i . S_j equals
// (3N/4 - N(N-1)/4) * 1 + sum_{i<j} SWAP_ij for spin-1/2 qubits.
inline StateVector apply_total_spin_squared(const StateVector& v) {
  const int n = v.n_qubits();
  const double diagonal = 3.0 * n / 4.0 - n * (n - 1) / 4.0;
  StateVector out(n);
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = diagonal * v[i];
  for (int q1 = 1; q1 <= n; ++q1) {
    for (int q2 = q1 + 1; q2 <= n; ++q2) {
      const StateVector swapped = apply_swap(v, q1, q2);
      for (std::size_t i = 0; i < v.dim(); ++i) out[i] += swapped[i];
    }
  }
  return out;
}

// Sz of one basis state: (#plus - #minus)/2, with bit 0 meaning |+>.
inline HalfInt sz_of_bitstring(std::uint32_t bits, int n_qubits) {
  const int minus = std::popcount(bits);
  return HalfInt::from_twice(n_qubits - 2 * minus);
}

// max_b |(m_b - m) * amplitude_b|.
inline double sz_eigenvalue_error(const StateVector& v, HalfInt m) {
  double worst = 0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const HalfInt mb = sz_of_bitstring(static_cast<std::uint32_t>(i), v.n_qubits());
    const double gap = (mb - m).value();
    worst = std::max(worst, std::abs(gap * v[i]));
  }
  return worst;
}

}  // namespace spinoptics::testing
