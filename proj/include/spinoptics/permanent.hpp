#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spinoptics {

/// Minimal dense square matrix, row-major.
template <typename Scalar>
class SquareMatrix {
 public:
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n < 0 || n > 24) throw std::domain_error("SquareMatrix supports 0..24 rows");
  }

  int size() const { return n_; }
  Scalar& at(int row, int col) { return a_[static_cast<std::size_t>(row) * n_ + col]; }
  const Scalar& at(int row, int col) const {
    return a_[static_cast<std::size_t>(row) * n_ + col];
  }

 private:
  int n_;
  std::vector<Scalar> a_;
};

/// Permanent by Ryser's inclusion-exclusion with Gray-code column updates,
/// O(2^n * n). Scalar needs +, -, *, construction from int, and ==.
template <typename Scalar>
Scalar permanent_ryser(const SquareMatrix<Scalar>& m) {
  const int n = m.size();
  if (n == 0) return Scalar(1);
  if (n > 24) throw std::domain_error("permanent_ryser supports n <= 24");
  std::vector<Scalar> rowsum(static_cast<std::size_t>(n), Scalar(0));
  Scalar sum(0);
  std::uint32_t code = 0;
  for (std::uint32_t k = 1; k < (std::uint32_t{1} << n); ++k) {
    const std::uint32_t next = k ^ (k >> 1);
    const std::uint32_t flipped = next ^ code;
    const int col = std::countr_zero(flipped);
    if (next & flipped) {
      for (int row = 0; row < n; ++row) rowsum[row] = rowsum[row] + m.at(row, col);
    } else {
      for (int row = 0; row < n; ++row) rowsum[row] = rowsum[row] - m.at(row, col);
    }
    code = next;
    Scalar term(1);
    for (int row = 0; row < n; ++row) term = term * rowsum[row];
    if (std::popcount(next) % 2 == 0)
      sum = sum + term;
    else
      sum = sum - term;
  }
  return n % 2 == 0 ? sum : Scalar(0) - sum;
}

}  // namespace spinoptics
