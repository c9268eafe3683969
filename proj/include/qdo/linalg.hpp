#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdo {

template <std::size_t N>
using SquareMatrix = std::array<std::array<double, N>, N>;

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t column, double pivot)
      : std::runtime_error("singular matrix: pivot " + std::to_string(pivot) + " in column " +
                           std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Solves a x = b by Gaussian elimination with partial (row) pivoting.
///
/// A pivot whose magnitude falls below `rel_tol` times the largest entry of the
/// original matrix is treated as zero and reported through SingularMatrixError.
/// Ties between candidate pivot rows keep the topmost row.
template <std::size_t N>
std::array<double, N> solve_partial_pivot(SquareMatrix<N> a, std::array<double, N> b,
                                          double rel_tol = 1e-12) {
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  const double threshold = rel_tol * scale;

  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot_row = col;
    for (std::size_t i = col + 1; i < N; ++i)
      if (std::abs(a[i][col]) > std::abs(a[pivot_row][col])) pivot_row = i;

    if (!(std::abs(a[pivot_row][col]) > threshold))
      throw SingularMatrixError(col, a[pivot_row][col]);

    if (pivot_row != col) {
      std::swap(a[pivot_row], a[col]);
      std::swap(b[pivot_row], b[col]);
    }

    for (std::size_t i = col + 1; i < N; ++i) {
      const double factor = a[i][col] / a[col][col];
      if (factor == 0.0) continue;
      a[i][col] = 0.0;
      for (std::size_t j = col + 1; j < N; ++j) a[i][j] -= factor * a[col][j];
      b[i] -= factor * b[col];
    }
  }

  std::array<double, N> x{};
  for (std::size_t k = N; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < N; ++j) acc -= a[k][j] * x[j];
    x[k] = acc / a[k][k];
  }
  return x;
}

}  // namespace qdo
