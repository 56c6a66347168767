#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace spinoptics {

/// Complex number with 64-bit integer parts. Post-selection amplitudes of
/// setups whose fiber phases are multiples of pi/2 live in this ring, so sums
/// over matchings can be carried out without rounding.
struct ExactComplex {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr ExactComplex() = default;
  constexpr ExactComplex(std::int64_t r) : re(r) {}
  constexpr ExactComplex(std::int64_t r, std::int64_t i) : re(r), im(i) {}

  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr std::int64_t norm2() const { return re * re + im * im; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend constexpr ExactComplex operator+(ExactComplex a, ExactComplex b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend constexpr ExactComplex operator-(ExactComplex a, ExactComplex b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend constexpr ExactComplex operator-(ExactComplex a) { return {-a.re, -a.im}; }
  friend constexpr ExactComplex operator*(ExactComplex a, ExactComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactComplex& operator+=(ExactComplex o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator*=(ExactComplex o) { return *this = *this * o; }

  friend constexpr bool operator==(ExactComplex, ExactComplex) = default;
};

inline std::string to_string(ExactComplex z) {
  return std::to_string(z.re) + " " + std::to_string(z.im);
}

}  // namespace spinoptics
