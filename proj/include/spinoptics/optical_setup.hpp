#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinoptics/exact_complex.hpp"

namespace spinoptics {

/// Polarization filter in front of a detector. A sigma- filter projects the
/// emitting atom onto |+>, a sigma+ filter onto |->.
enum class Polarizer { sigma_minus, sigma_plus };

inline std::string to_string(Polarizer p) {
  return p == Polarizer::sigma_minus ? "σ-" : "σ+";
}

/// Optical phase as an exact rational multiple of pi, reduced and normalized
/// to [0, 2pi). Keeping the rational exact lets compiled setups (phases 0 and
/// pi) produce integer amplitudes downstream.
class Phase {
 public:
  constexpr Phase() = default;

  /// num/den * pi.
  static Phase of(long long num, long long den) {
    if (den == 0) throw std::domain_error("Phase: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    num %= 2 * den;
    if (num < 0) num += 2 * den;
    Phase p;
    p.num_ = num;
    p.den_ = den;
    return p;
  }

  static Phase zero() { return {}; }
  static Phase pi() { return of(1, 1); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  double radians() const {
    return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::complex<double> amplitude() const {
    return std::polar(1.0, radians());
  }

  /// True when the phase is a multiple of pi/2, i.e. the amplitude is one of
  /// {1, i, -1, -i} and exact integer arithmetic applies.
  bool multiple_of_half_pi() const { return den_ == 1 || den_ == 2; }

  ExactComplex exact_amplitude() const {
    if (!multiple_of_half_pi())
      throw std::domain_error("Phase: amplitude is not a fourth root of unity");
    switch ((num_ * (2 / den_)) % 4) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }

  /// "0", "1", "1/2", "3/2", ...
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses the to_string form (an optional "p/q" fraction).
  static Phase parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      std::size_t used = 0;
      const std::string head = slash == std::string::npos ? text : text.substr(0, slash);
      const long long num = std::stoll(head, &used);
      if (used != head.size()) throw std::invalid_argument(text);
      if (slash == std::string::npos) return of(num, 1);
      const std::string tail = text.substr(slash + 1);
      const long long den = std::stoll(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
      return of(num, den);
    } catch (const std::domain_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("not a rational phase: '" + text + "'");
    }
  }

  friend bool operator==(Phase, Phase) = default;

 private:
  long long num_ = 0;
  long long den_ = 1;
};

/// Single-mode fiber from an emitter to a detector, carrying a unit-modulus
/// phase factor. Indices are 1-based.
struct Fiber {
  int emitter = 0;
  int detector = 0;
  Phase phase;

  friend bool operator==(const Fiber&, const Fiber&) = default;
};

/// The emitter-detector network: n emitters facing n polarization-filtered
/// detectors, connected by fibers.
struct OpticalSetup {
  int n = 0;
  std::vector<Polarizer> polarizers;
  std::vector<Fiber> fibers;

  int fiber_count(int emitter) const {
    int d = 0;
    for (const auto& f : fibers) d += (f.emitter == emitter);
    return d;
  }

  const Fiber* find_fiber(int emitter, int detector) const {
    for (const auto& f : fibers)
      if (f.emitter == emitter && f.detector == detector) return &f;
    return nullptr;
  }

  int count(Polarizer p) const {
    return static_cast<int>(std::count(polarizers.begin(), polarizers.end(), p));
  }

  friend bool operator==(const OpticalSetup&, const OpticalSetup&) = default;
};

struct Diagnostic {
  enum class Kind {
    bad_size,
    polarizer_count,
    index_out_of_range,
    duplicate_fiber,
    isolated_emitter,
    no_perfect_matching,
  };

  Kind kind;
  int emitter = 0;   // 0 when not tied to one emitter
  int detector = 0;  // 0 when not tied to one detector
  std::string message;
};

namespace detail {

inline bool try_assign(int emitter, const std::vector<std::vector<int>>& adjacency,
                       std::vector<int>& detector_owner, std::vector<bool>& visited) {
  for (int d : adjacency[static_cast<std::size_t>(emitter)]) {
    if (visited[static_cast<std::size_t>(d)]) continue;
    visited[static_cast<std::size_t>(d)] = true;
    if (detector_owner[static_cast<std::size_t>(d)] < 0 ||
        try_assign(detector_owner[static_cast<std::size_t>(d)], adjacency, detector_owner,
                   visited)) {
      detector_owner[static_cast<std::size_t>(d)] = emitter;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Exact perfect-matching test on the emitter-detector fiber graph
/// (augmenting paths). Assumes indices are in range.
inline bool has_perfect_matching(const OpticalSetup& setup) {
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(setup.n));
  for (const auto& f : setup.fibers)
    adjacency[static_cast<std::size_t>(f.emitter - 1)].push_back(f.detector - 1);
  std::vector<int> detector_owner(static_cast<std::size_t>(setup.n), -1);
  for (int e = 0; e < setup.n; ++e) {
    std::vector<bool> visited(static_cast<std::size_t>(setup.n), false);
    if (!detail::try_assign(e, adjacency, detector_owner, visited)) return false;
  }
  return true;
}

/// Checks every OpticalSetup invariant and reports each violation. Total on
/// arbitrary well-typed input; an empty result means the setup is valid.
inline std::vector<Diagnostic> validate_setup(const OpticalSetup& setup) {
  std::vector<Diagnostic> out;
  if (setup.n < 1) {
    out.push_back({Diagnostic::Kind::bad_size, 0, 0,
                   "setup needs at least one emitter, got n = " + std::to_string(setup.n)});
    return out;
  }
  if (static_cast<int>(setup.polarizers.size()) != setup.n) {
    out.push_back({Diagnostic::Kind::polarizer_count, 0, 0,
                   "expected " + std::to_string(setup.n) + " polarizers, got " +
                       std::to_string(setup.polarizers.size())});
    return out;
  }
  bool indices_ok = true;
  for (const auto& f : setup.fibers) {
    if (f.emitter < 1 || f.emitter > setup.n || f.detector < 1 || f.detector > setup.n) {
      out.push_back({Diagnostic::Kind::index_out_of_range, f.emitter, f.detector,
                     "fiber (" + std::to_string(f.emitter) + ", " + std::to_string(f.detector) +
                         ") is out of range for n = " + std::to_string(setup.n)});
      indices_ok = false;
    }
  }
  if (!indices_ok) return out;
  for (std::size_t i = 0; i < setup.fibers.size(); ++i) {
    for (std::size_t k = i + 1; k < setup.fibers.size(); ++k) {
      if (setup.fibers[i].emitter == setup.fibers[k].emitter &&
          setup.fibers[i].detector == setup.fibers[k].detector) {
        out.push_back({Diagnostic::Kind::duplicate_fiber, setup.fibers[i].emitter,
                       setup.fibers[i].detector,
                       "more than one fiber from emitter " +
                           std::to_string(setup.fibers[i].emitter) + " to detector " +
                           std::to_string(setup.fibers[i].detector)});
      }
    }
  }
  for (int e = 1; e <= setup.n; ++e) {
    if (setup.fiber_count(e) == 0)
      out.push_back({Diagnostic::Kind::isolated_emitter, e, 0,
                     "emitter " + std::to_string(e) + " has no fibers"});
  }
  if (out.empty() && !has_perfect_matching(setup)) {
    out.push_back({Diagnostic::Kind::no_perfect_matching, 0, 0,
                   "the fiber graph admits no perfect matching; the coincidence event has "
                   "probability zero"});
  }
  return out;
}

/// Parse failure with a human-readable location.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline Polarizer parse_polarizer(const std::string& text, std::size_t index) {
  if (text == "σ-" || text == "s-" || text == "sigma-") return Polarizer::sigma_minus;
  if (text == "σ+" || text == "s+" || text == "sigma+") return Polarizer::sigma_plus;
  throw ParseError("polarizers[" + std::to_string(index) + "]: expected \"σ-\" or \"σ+\", got \"" +
                   text + "\"");
}

}  // namespace detail

/// Serializes to the setup document: a JSON object with fields `n`,
/// `polarizers` and `fibers`, phases written as exact rationals of pi.
inline std::string serialize_setup(const OpticalSetup& setup) {
  nlohmann::ordered_json doc;
  doc["n"] = setup.n;
  auto& pols = doc["polarizers"] = nlohmann::ordered_json::array();
  for (const auto& p : setup.polarizers) pols.push_back(to_string(p));
  auto& fibers = doc["fibers"] = nlohmann::ordered_json::array();
  for (const auto& f : setup.fibers) {
    fibers.push_back({{"emitter", f.emitter},
                      {"detector", f.detector},
                      {"phase_over_pi", f.phase.to_string()}});
  }
  return doc.dump(2) + "\n";
}

/// Parses a setup document. Enforces the schema (equal emitter and detector
/// counts, in-range indices, at most one fiber per pair); physical invariants
/// such as matching existence are left to validate_setup.
inline OpticalSetup parse_setup(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("setup document is not valid JSON: ") + e.what());
  }
  OpticalSetup setup;
  try {
    if (!doc.is_object()) throw ParseError("setup document must be a JSON object");
    setup.n = doc.at("n").get<int>();
    if (setup.n < 1) throw ParseError("n: must be at least 1");
    const auto& pols = doc.at("polarizers");
    if (!pols.is_array()) throw ParseError("polarizers: must be an array");
    for (std::size_t i = 0; i < pols.size(); ++i)
      setup.polarizers.push_back(detail::parse_polarizer(pols[i].get<std::string>(), i));
    if (static_cast<int>(setup.polarizers.size()) != setup.n)
      throw ParseError("polarizers: expected " + std::to_string(setup.n) + " entries, got " +
                       std::to_string(setup.polarizers.size()));
    const auto& fibers = doc.at("fibers");
    if (!fibers.is_array()) throw ParseError("fibers: must be an array");
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      const std::string at = "fibers[" + std::to_string(i) + "]";
      Fiber f;
      f.emitter = fibers[i].at("emitter").get<int>();
      f.detector = fibers[i].at("detector").get<int>();
      if (f.emitter < 1 || f.emitter > setup.n)
        throw ParseError(at + ": emitter " + std::to_string(f.emitter) + " out of range 1.." +
                         std::to_string(setup.n));
      if (f.detector < 1 || f.detector > setup.n)
        throw ParseError(at + ": detector " + std::to_string(f.detector) + " out of range 1.." +
                         std::to_string(setup.n));
      if (setup.find_fiber(f.emitter, f.detector) != nullptr)
        throw ParseError(at + ": duplicate fiber (emitter " + std::to_string(f.emitter) +
                         ", detector " + std::to_string(f.detector) + ")");
      try {
        f.phase = Phase::parse(fibers[i].at("phase_over_pi").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(at + ": " + e.what());
      }
      setup.fibers.push_back(f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("setup document: ") + e.what());
  }
  return setup;
}

/// Renders the setup as an undirected bipartite graph in DOT format. Emitters
/// are circles, detectors boxes labeled with their polarizer; pi-phase fibers
/// are dashed and labeled.
inline std::string export_dot(const OpticalSetup& setup) {
  std::ostringstream os;
  os << "graph optical_setup {\n  rankdir=LR;\n";
  for (int e = 1; e <= setup.n; ++e)
    os << "  e" << e << " [shape=circle, label=\"" << e << "\"];\n";
  for (int d = 1; d <= setup.n; ++d) {
    os << "  d" << d << " [shape=box, label=\"D" << d;
    if (d <= static_cast<int>(setup.polarizers.size()))
      os << " " << to_string(setup.polarizers[static_cast<std::size_t>(d - 1)]);
    os << "\"];\n";
  }
  for (const auto& f : setup.fibers) {
    os << "  e" << f.emitter << " -- d" << f.detector;
    if (f.phase == Phase::pi()) {
      os << " [style=dashed, label=\"π\"]";
    } else if (!(f.phase == Phase::zero())) {
      os << " [label=\"" << f.phase.to_string() << "π\"]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace spinoptics
