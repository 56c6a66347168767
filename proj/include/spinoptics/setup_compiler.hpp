#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinoptics/coupled_label.hpp"
#include "spinoptics/optical_setup.hpp"

namespace spinoptics {

/// How one emitter was wired: the first emitter, a spin-raising step
/// (S_i > S_{i-1}), or a spin-lowering step (S_i < S_{i-1}).
enum class EmitterCase { first, up, down };

inline std::string to_string(EmitterCase c) {
  switch (c) {
    case EmitterCase::first: return "first";
    case EmitterCase::up: return "up";
    default: return "down";
  }
}

struct EmitterTrace {
  int emitter = 0;
  EmitterCase kind = EmitterCase::first;
  std::vector<int> detectors;
  // Valid only for down steps: the detector pair this emitter reserved.
  int reserved_sigma_minus = 0;
  int reserved_sigma_plus = 0;

  friend bool operator==(const EmitterTrace&, const EmitterTrace&) = default;
};

/// Per-emitter record of the compilation, for reproducibility and debugging.
struct CompilerTrace {
  std::vector<EmitterTrace> emitters;

  std::string to_json() const {
    nlohmann::ordered_json doc;
    auto& list = doc["emitters"] = nlohmann::ordered_json::array();
    for (const auto& t : emitters) {
      nlohmann::ordered_json entry{{"emitter", t.emitter},
                                   {"case", to_string(t.kind)},
                                   {"detectors", t.detectors}};
      if (t.kind == EmitterCase::down) {
        entry["reserved"] = {{"sigma_minus", t.reserved_sigma_minus},
                             {"sigma_plus", t.reserved_sigma_plus}};
      }
      list.push_back(entry);
    }
    return doc.dump(2) + "\n";
  }

  friend bool operator==(const CompilerTrace&, const CompilerTrace&) = default;
};

struct CompileResult {
  OpticalSetup setup;
  CompilerTrace trace;
};

/// Picks the detector a lowering emitter uses among the unreserved candidates
/// of the required polarity. Exists solely to test choice-invariance; the
/// default takes the lowest index.
using DetectorChooser =
    std::function<int(int emitter, Polarizer required, const std::vector<int>& candidates)>;

struct Feasibility {
  bool feasible = false;
  std::string reason;
};

/// True iff the label is valid and the polarizer counts N/2 +- m are
/// nonnegative integers (which valid labels always satisfy).
inline Feasibility label_feasibility(const CoupledLabel& label) {
  if (auto why = label_violation(label); !why.empty()) return {false, why};
  const int n = static_cast<int>(label.n_qubits());
  const int twice_minus = n + label.m.twice();
  const int twice_plus = n - label.m.twice();
  if (twice_minus % 2 != 0 || twice_plus % 2 != 0)
    return {false, "detector counts N/2 +- m are not integers"};
  if (twice_minus < 0 || twice_plus < 0)
    return {false, "detector counts N/2 +- m are not both nonnegative"};
  return {true, {}};
}

/// Translates a coupled-basis label into the optical setup that projects onto
/// it: N/2 + m sigma- detectors (lowest indices) and N/2 - m sigma+
/// detectors; the first emitter wired to all detectors; each raising emitter
/// wired to every detector not yet reserved; each lowering emitter wired to
/// one unreserved detector of either polarity, with a pi phase shift on its
/// sigma- fiber, and that pair reserved against all later emitters.
inline CompileResult compile_setup(const CoupledLabel& label, const DetectorChooser& choose) {
  require_valid(label);
  const int n = static_cast<int>(label.n_qubits());
  const int n_minus = (n + label.m.twice()) / 2;

  CompileResult result;
  OpticalSetup& setup = result.setup;
  setup.n = n;
  for (int d = 1; d <= n; ++d)
    setup.polarizers.push_back(d <= n_minus ? Polarizer::sigma_minus : Polarizer::sigma_plus);

  std::vector<bool> reserved(static_cast<std::size_t>(n) + 1, false);
  auto candidates_of = [&](Polarizer required) {
    std::vector<int> candidates;
    for (int d = 1; d <= n; ++d) {
      if (!reserved[static_cast<std::size_t>(d)] &&
          setup.polarizers[static_cast<std::size_t>(d - 1)] == required)
        candidates.push_back(d);
    }
    return candidates;
  };
  auto pick = [&](int emitter, Polarizer required) {
    const auto candidates = candidates_of(required);
    if (candidates.empty())
      throw std::logic_error("compile_setup: no unreserved " + to_string(required) +
                             " detector left for emitter " + std::to_string(emitter));
    const int chosen = choose ? choose(emitter, required, candidates) : candidates.front();
    if (std::find(candidates.begin(), candidates.end(), chosen) == candidates.end())
      throw std::invalid_argument("compile_setup: chooser returned detector " +
                                  std::to_string(chosen) + ", which is not a candidate");
    return chosen;
  };

  const auto& spins = label.history.spins;
  for (int e = 1; e <= n; ++e) {
    EmitterTrace trace;
    trace.emitter = e;
    if (e == 1) {
      trace.kind = EmitterCase::first;
      for (int d = 1; d <= n; ++d) {
        setup.fibers.push_back({e, d, Phase::zero()});
        trace.detectors.push_back(d);
      }
    } else if (spins[static_cast<std::size_t>(e - 1)] > spins[static_cast<std::size_t>(e - 2)]) {
      trace.kind = EmitterCase::up;
      for (int d = 1; d <= n; ++d) {
        if (reserved[static_cast<std::size_t>(d)]) continue;
        setup.fibers.push_back({e, d, Phase::zero()});
        trace.detectors.push_back(d);
      }
    } else {
      trace.kind = EmitterCase::down;
      const int d_minus = pick(e, Polarizer::sigma_minus);
      const int d_plus = pick(e, Polarizer::sigma_plus);
      reserved[static_cast<std::size_t>(d_minus)] = true;
      reserved[static_cast<std::size_t>(d_plus)] = true;
      const int lo = std::min(d_minus, d_plus);
      const int hi = std::max(d_minus, d_plus);
      setup.fibers.push_back({e, lo, lo == d_minus ? Phase::pi() : Phase::zero()});
      setup.fibers.push_back({e, hi, hi == d_minus ? Phase::pi() : Phase::zero()});
      trace.detectors = {lo, hi};
      trace.reserved_sigma_minus = d_minus;
      trace.reserved_sigma_plus = d_plus;
    }
    result.trace.emitters.push_back(trace);
  }

  if (const auto diagnostics = validate_setup(setup); !diagnostics.empty())
    throw std::logic_error("compile_setup: produced an invalid setup: " +
                           diagnostics.front().message);
  return result;
}

inline CompileResult compile_setup(const CoupledLabel& label) {
  return compile_setup(label, DetectorChooser{});
}

}  // namespace spinoptics
