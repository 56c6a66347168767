#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinoptics/half_int.hpp"

namespace spinoptics {

/// The sequence of intermediate total spins S_1, S_2, ..., S_N obtained by
/// adding one spin-1/2 at a time. Uniquely names a coupling path.
struct CouplingHistory {
  std::vector<HalfInt> spins;

  std::size_t n_qubits() const { return spins.size(); }
  HalfInt total_spin() const { return spins.back(); }

  friend bool operator==(const CouplingHistory&, const CouplingHistory&) = default;
};

/// Coupling history plus the Sz projection m: the unambiguous name of one
/// coupled-basis state |S1,...,SN; m>.
struct CoupledLabel {
  CouplingHistory history;
  HalfInt m;

  std::size_t n_qubits() const { return history.n_qubits(); }

  friend bool operator==(const CoupledLabel&, const CoupledLabel&) = default;
};

/// Empty string when the history is a valid coupling path, else the reason.
inline std::string history_violation(const CouplingHistory& history) {
  const auto& s = history.spins;
  if (s.empty()) return "coupling history is empty";
  if (s[0] != HalfInt::half()) return "S1 must be 1/2, got " + to_string(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].twice() < 0)
      return "S" + std::to_string(i + 1) + " is negative: " + to_string(s[i]);
    const int step = s[i].twice() - s[i - 1].twice();
    if (step != 1 && step != -1)
      return "S" + std::to_string(i + 1) + " must differ from S" + std::to_string(i) +
             " by 1/2, got " + to_string(s[i]) + " after " + to_string(s[i - 1]);
  }
  return {};
}

/// Empty string when the label is valid, else the reason.
inline std::string label_violation(const CoupledLabel& label) {
  if (auto why = history_violation(label.history); !why.empty()) return why;
  const HalfInt total = label.history.total_spin();
  if (label.m.abs() > total)
    return "|m| exceeds the total spin: m = " + to_string(label.m) + ", S = " + to_string(total);
  const int n = static_cast<int>(label.n_qubits());
  if (((label.m.twice() - n) % 2) != 0)
    return "m = " + to_string(label.m) + " has the wrong parity for " + std::to_string(n) +
           " qubits";
  return {};
}

inline bool is_valid(const CoupledLabel& label) { return label_violation(label).empty(); }

/// Throws std::domain_error if the label is invalid.
inline void require_valid(const CoupledLabel& label) {
  if (auto why = label_violation(label); !why.empty())
    throw std::domain_error("invalid label: " + why);
}

/// All 2^n coupled-basis labels, ordered lexicographically by the doubled-spin
/// sequence and then by ascending m. The order is a stable output contract.
/// Supports 1 <= n <= 16.
inline std::vector<CoupledLabel> enumerate_coupled_basis(int n) {
  if (n < 1 || n > 16) throw std::domain_error("enumerate_coupled_basis supports 1 <= n <= 16");
  std::vector<CoupledLabel> out;
  out.reserve(std::size_t{1} << n);
  std::vector<HalfInt> spins{HalfInt::half()};
  auto extend = [&](auto&& self) -> void {
    if (spins.size() == static_cast<std::size_t>(n)) {
      const HalfInt total = spins.back();
      for (int tm = -total.twice(); tm <= total.twice(); tm += 2)
        out.push_back({CouplingHistory{spins}, HalfInt::from_twice(tm)});
      return;
    }
    const int t = spins.back().twice();
    if (t >= 1) {
      spins.push_back(HalfInt::from_twice(t - 1));
      self(self);
      spins.pop_back();
    }
    spins.push_back(HalfInt::from_twice(t + 1));
    self(self);
    spins.pop_back();
  };
  extend(extend);
  return out;
}

/// "1/2,1,1/2;+1/2" (positive m gets an explicit sign).
inline std::string format_label(const CoupledLabel& label) {
  std::string s;
  for (std::size_t i = 0; i < label.history.spins.size(); ++i) {
    if (i) s += ',';
    s += to_string(label.history.spins[i]);
  }
  s += ';';
  if (label.m.twice() > 0) s += '+';
  s += to_string(label.m);
  return s;
}

/// Doubled spins joined with '-', e.g. "1-2-1". Used in CSV reports, where the
/// label's own commas would collide with the column separator.
inline std::string history_key(const CouplingHistory& history) {
  std::string s;
  for (std::size_t i = 0; i < history.spins.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(history.spins[i].twice());
  }
  return s;
}

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string strip(const std::string& s) {
  auto begin = s.find_first_not_of(" \t");
  auto end = s.find_last_not_of(" \t");
  if (begin == std::string::npos) return {};
  return s.substr(begin, end - begin + 1);
}

}  // namespace detail

/// Parses "S1,S2,...,SN;m" with spins and m written as integers or halves
/// ("1/2,1,1/2;1/2"), or the doubled-integer alias "d:1,2,1;1". Throws
/// std::invalid_argument on grammar errors and std::domain_error when the
/// parsed label violates its invariants.
inline CoupledLabel parse_label(const std::string& text) {
  std::string body = detail::strip(text);
  bool doubled = false;
  if (body.rfind("d:", 0) == 0) {
    doubled = true;
    body = body.substr(2);
  }
  const auto halves = detail::split(body, ';');
  if (halves.size() != 2)
    throw std::invalid_argument("label must be 'S1,S2,...,SN;m', got '" + text + "'");
  auto parse_one = [&](const std::string& raw) {
    const std::string token = detail::strip(raw);
    if (doubled) {
      std::size_t used = 0;
      int t = 0;
      try {
        t = std::stoi(token, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("not a doubled quantum number: '" + token + "'");
      }
      if (used != token.size())
        throw std::invalid_argument("not a doubled quantum number: '" + token + "'");
      return HalfInt::from_twice(t);
    }
    return parse_half_int(token);
  };
  CoupledLabel label;
  for (const auto& part : detail::split(halves[0], ','))
    label.history.spins.push_back(parse_one(part));
  label.m = parse_one(halves[1]);
  require_valid(label);
  return label;
}

}  // namespace spinoptics
