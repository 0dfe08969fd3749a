#pragma once

// Kernels shared by assign::sinkhorn and the differentiable tape, so both
// produce bit-identical forward values.

#include <algorithm>
#include <cmath>
#include <vector>

#include "nga/matrix.h"

namespace nga::detail {

inline void apply_floor(std::vector<double>& x, double floor) {
  for (double& v : x) v = std::max(v, floor);
}

inline double pad_fill(const std::vector<double>& x) {
  return *std::min_element(x.begin(), x.end()) * 1e-3;
}

// rows x cols -> n x n, n = max(rows, cols); new cells get `fill`.
inline std::vector<double> pad_square(const std::vector<double>& x, int rows,
                                      int cols, double fill) {
  const int n = std::max(rows, cols);
  std::vector<double> out(static_cast<std::size_t>(n) * n, fill);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[i * n + j] = x[i * cols + j];
  return out;
}

inline std::vector<double> crop(const std::vector<double>& x, int n, int rows,
                                int cols) {
  std::vector<double> out(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[i * cols + j] = x[i * n + j];
  return out;
}

// Divides each row by its sum. Writes the sums to `sums`.
inline void row_normalize(std::vector<double>& x, int rows, int cols,
                          std::vector<double>& sums) {
  sums.assign(rows, 0.0);
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols; ++j) s += x[i * cols + j];
    sums[i] = s;
    for (int j = 0; j < cols; ++j) x[i * cols + j] /= s;
  }
}

inline void col_normalize(std::vector<double>& x, int rows, int cols,
                          std::vector<double>& sums) {
  sums.assign(cols, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) sums[j] += x[i * cols + j];
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) x[i * cols + j] /= sums[j];
}

// Max deviation of row and column sums from 1 on a square matrix.
inline double square_residual(const std::vector<double>& x, int n) {
  double worst = 0.0;
  std::vector<double> col(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j) {
      r += x[i * n + j];
      col[j] += x[i * n + j];
    }
    worst = std::max(worst, std::abs(r - 1.0));
  }
  for (double c : col) worst = std::max(worst, std::abs(c - 1.0));
  return worst;
}

}  // namespace nga::detail
