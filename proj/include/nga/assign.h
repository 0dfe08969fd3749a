#pragma once

#include <cstdint>
#include <vector>

#include "nga/acg.h"
#include "nga/matrix.h"
#include "nga/rng.h"

namespace nga {

struct SinkhornOptions {
  int iters = 20;
  // Stop early once sinkhorn_residual drops below tol. 0 runs all iters.
  double tol = 0.0;
};

// Entries are floored at kSinkhornFloor, a rectangular input is padded to
// square with fill = min * 1e-3, then `iters` rounds of row normalization
// followed by column normalization run on the square matrix. Padding rows or
// columns are dropped on return. Throws InvalidArgument on non-finite or
// negative input, or iters < 1.
inline constexpr double kSinkhornFloor = 1e-30;
Matrix sinkhorn(const Matrix& m, const SinkhornOptions& options = {});

// max |row sum - 1| over rows, max(0, col sum - 1) over columns; on square
// input also max |col sum - 1|. Rows and columns are swapped if m is tall.
double sinkhorn_residual(const Matrix& s);

// Residual after each iteration of sinkhorn(m, {iters}).
std::vector<double> sinkhorn_residual_trace(const Matrix& m, int iters);

// i.i.d. scale * Gumbel(0, 1) draws, row-major.
Matrix sample_gumbel(Rng& rng, int rows, int cols, double scale = 1.0);

// sinkhorn(exp(scores + g)), g ~ noise_scale * Gumbel. The exponent is
// shifted by its maximum first, which sinkhorn is invariant to.
Matrix gumbel_sinkhorn(const Matrix& scores, Rng& rng,
                       const SinkhornOptions& options = {},
                       double noise_scale = 1.0);
Matrix gumbel_sinkhorn(const Matrix& scores, std::uint64_t seed,
                       const SinkhornOptions& options = {},
                       double noise_scale = 1.0);

// Maximum-score injective assignment. Among all optimal assignments the
// lexicographically smallest column vector is returned. Rows of a tall
// matrix that cannot be assigned get HardAssignment::kUnassigned.
HardAssignment hungarian(const Matrix& s);

// Sum of s(i, p.col[i]) over assigned rows, accumulated in row order.
double assignment_score(const Matrix& s, const HardAssignment& p);

}  // namespace nga
