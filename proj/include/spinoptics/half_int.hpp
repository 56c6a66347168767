#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spinoptics {

/// Exact half-integer quantum number (a spin S or a projection m), stored as
/// twice its value so that all quantum-number arithmetic stays in integers.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  /// Builds the half-integer t/2.
  static constexpr HalfInt from_twice(int t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }

  /// Builds the whole number v.
  static constexpr HalfInt whole(int v) { return from_twice(2 * v); }

  /// The value 1/2.
  static constexpr HalfInt half() { return from_twice(1); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return twice_ / 2.0; }

  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) { return a.twice_ <=> b.twice_; }

 private:
  int twice_ = 0;
};

/// "0", "1", "-1/2", "3/2", ...
inline std::string to_string(HalfInt h) {
  if (h.is_integer()) return std::to_string(h.twice() / 2);
  return std::to_string(h.twice()) + "/2";
}

/// Parses "0", "2", "-1/2", "+3/2". Accepts only halves and whole numbers.
inline HalfInt parse_half_int(const std::string& token) {
  const auto slash = token.find('/');
  const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
  if (head.empty()) throw std::invalid_argument("empty quantum number");
  std::size_t used = 0;
  int numerator = 0;
  try {
    numerator = std::stoi(head, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a quantum number: '" + token + "'");
  }
  if (used != head.size()) throw std::invalid_argument("not a quantum number: '" + token + "'");
  if (slash == std::string::npos) return HalfInt::whole(numerator);
  if (token.substr(slash + 1) != "2")
    throw std::invalid_argument("only halves are allowed: '" + token + "'");
  return HalfInt::from_twice(numerator);
}

}  // namespace spinoptics
