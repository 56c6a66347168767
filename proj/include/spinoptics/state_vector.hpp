#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinoptics/detail/format.hpp"

namespace spinoptics {

using Amplitude = std::complex<double>;

/// Converts a basis index to its "+/-" string. Qubit 1 is the most
/// significant bit; bit value 0 is |+>, bit value 1 is |->.
inline std::string bitstring_to_string(std::uint32_t bits, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '+');
  for (int q = 0; q < n_qubits; ++q) {
    if ((bits >> (n_qubits - 1 - q)) & 1u) s[static_cast<std::size_t>(q)] = '-';
  }
  return s;
}

/// Inverse of bitstring_to_string; throws on characters other than '+'/'-'.
inline std::uint32_t bitstring_from_string(const std::string& s) {
  std::uint32_t bits = 0;
  for (char c : s) {
    bits <<= 1;
    if (c == '-')
      bits |= 1u;
    else if (c != '+')
      throw std::invalid_argument("bitstring must consist of '+'/'-' characters");
  }
  return bits;
}

/// Dense complex amplitudes over the 2^n product basis of |+>/|-> qubits.
class StateVector {
 public:
  StateVector() = default;

  explicit StateVector(int n_qubits)
      : n_qubits_(n_qubits), amplitudes_(std::size_t{1} << n_qubits) {
    if (n_qubits < 0 || n_qubits > 24)
      throw std::domain_error("StateVector supports 0..24 qubits");
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }

  Amplitude& operator[](std::size_t i) { return amplitudes_[i]; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

  const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }

  double norm_squared() const {
    double s = 0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
  }

  /// Scales to unit norm. A zero vector has no direction and is rejected.
  void normalize() {
    const double n2 = norm_squared();
    if (n2 <= 0) throw std::domain_error("cannot normalize a zero state vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes_) a *= inv;
  }

  /// One line per nonzero amplitude: "bitstring re im", ascending index.
  /// Magnitudes below 1e-14 are treated as zero.
  void to_text(std::ostream& os) const {
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
      const Amplitude& a = amplitudes_[i];
      if (std::abs(a) <= 1e-14) continue;
      os << bitstring_to_string(static_cast<std::uint32_t>(i), n_qubits_) << ' '
         << detail::fmt_g(a.real()) << ' ' << detail::fmt_g(a.imag()) << '\n';
    }
  }

  std::string to_text() const {
    std::ostringstream os;
    to_text(os);
    return os.str();
  }

 private:
  int n_qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// <a|b>.
inline Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("inner_product: qubit count mismatch");
  Amplitude s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace spinoptics
