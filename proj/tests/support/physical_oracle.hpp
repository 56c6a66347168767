#pragma once

// Independent reference model for small setups. Instead of permanents it
// builds the joint emitter-photon superposition event by event: every emitter
// decays into (|+>|sigma-> + |->|sigma+>)/sqrt(2), its photon enters each
// attached fiber with amplitude e^{i phi}/sqrt(deg), and the coincidence
// projector keeps exactly the assignments where every detector receives one
// photon that passes its polarizer. Kept brute force on purpose; usable up to
// four or five emitters.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "spinoptics/optical_setup.hpp"
#include "spinoptics/state_vector.hpp"

namespace spinoptics::testing {

struct PhysicalOracleResult {
  bool null_event = false;
  double event_probability = 0;          // includes the eta^N detector factor
  StateVector state;                     // conditional atomic state, normalized
};

inline PhysicalOracleResult physical_emission_oracle(const OpticalSetup& setup,
                                                     double eta = 1.0) {
  const int n = setup.n;
  struct Branch {
    std::uint32_t bits = 0;              // atomic record, emitter 1 = high bit
    std::vector<int> destinations;       // destinations[i] = detector of photon i+1
    std::complex<double> amplitude = 1.0;
  };

  std::vector<Branch> branches{Branch{}};
  for (int emitter = 1; emitter <= n; ++emitter) {
    std::vector<const Fiber*> fibers;
    for (const Fiber& f : setup.fibers)
      if (f.emitter == emitter) fibers.push_back(&f);
    const double fan_out = 1.0 / std::sqrt(2.0 * fibers.size());

    std::vector<Branch> next;
    next.reserve(branches.size() * 2 * fibers.size());
    for (const Branch& b : branches) {
      for (int atom_bit = 0; atom_bit <= 1; ++atom_bit) {
        // atom_bit 0: atom ends in |+>, photon is sigma-.
        for (const Fiber* f : fibers) {
          Branch child = b;
          child.bits |= static_cast<std::uint32_t>(atom_bit) << (n - emitter);
          child.destinations.push_back(f->detector);
          child.amplitude *= fan_out * std::polar(1.0, f->phase.radians());
          next.push_back(std::move(child));
        }
      }
    }
    branches = std::move(next);
  }

  // Coincidence projection: one photon per detector, each passing its filter.
  std::map<std::uint32_t, std::complex<double>> conditional;
  for (const Branch& b : branches) {
    std::vector<int> hits(n + 1, 0);
    for (int d : b.destinations) ++hits[d];
    bool keep = true;
    for (int d = 1; d <= n && keep; ++d) keep = hits[d] == 1;
    for (int emitter = 1; emitter <= n && keep; ++emitter) {
      const std::uint32_t bit = (b.bits >> (n - emitter)) & 1u;
      const Polarizer photon = bit == 0 ? Polarizer::sigma_minus : Polarizer::sigma_plus;
      keep = photon == setup.polarizers[b.destinations[emitter - 1] - 1];
    }
    if (keep) conditional[b.bits] += b.amplitude;
  }

  PhysicalOracleResult result;
  result.state = StateVector(n);
  double norm2 = 0;
  for (const auto& [bits, amp] : conditional) {
    result.state[bits] = amp;
    norm2 += std::norm(amp);
  }
  if (norm2 <= 1e-24) {
    result.null_event = true;
    result.state = StateVector(n);
    return result;
  }
  double eta_pow = 1;
  for (int i = 0; i < n; ++i) eta_pow *= eta;
  result.event_probability = eta_pow * norm2;
  result.state.normalize();
  return result;
}

}  // namespace spinoptics::testing
