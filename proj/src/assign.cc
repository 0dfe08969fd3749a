#include "nga/assign.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "assign_kernels.h"
#include "nga/error.h"

namespace nga {
namespace {

void check_finite(const Matrix& m, const char* what) {
  for (double v : m.values()) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

// Runs the padded iteration and calls `after_iter(square, n)` after each
// row+column round; stops early when it returns true.
template <typename AfterIter>
Matrix run_sinkhorn(const Matrix& m, int iters, AfterIter&& after_iter) {
  check_finite(m, "sinkhorn");
  if (iters < 1) throw InvalidArgument("sinkhorn needs iters >= 1");
  for (double v : m.values()) {
    if (v < 0.0) throw InvalidArgument("sinkhorn input must be non-negative");
  }
  if (m.empty()) return m;
  const int rows = m.rows();
  const int cols = m.cols();
  const int n = std::max(rows, cols);
  std::vector<double> x(m.values().begin(), m.values().end());
  detail::apply_floor(x, kSinkhornFloor);
  if (rows != cols) x = detail::pad_square(x, rows, cols, detail::pad_fill(x));
  std::vector<double> sums;
  for (int it = 0; it < iters; ++it) {
    detail::row_normalize(x, n, n, sums);
    detail::col_normalize(x, n, n, sums);
    if (after_iter(x, n)) break;
  }
  if (rows != cols) x = detail::crop(x, n, rows, cols);
  return Matrix(rows, cols, std::move(x));
}

}  // namespace

Matrix sinkhorn(const Matrix& m, const SinkhornOptions& options) {
  return run_sinkhorn(m, options.iters, [&](const std::vector<double>& x, int n) {
    return options.tol > 0.0 && detail::square_residual(x, n) < options.tol;
  });
}

std::vector<double> sinkhorn_residual_trace(const Matrix& m, int iters) {
  std::vector<double> trace;
  run_sinkhorn(m, iters, [&](const std::vector<double>& x, int n) {
    trace.push_back(detail::square_residual(x, n));
    return false;
  });
  return trace;
}

double sinkhorn_residual(const Matrix& s) {
  const Matrix t = s.rows() > s.cols() ? s.transposed() : s;
  double worst = 0.0;
  std::vector<double> col(t.cols(), 0.0);
  for (int i = 0; i < t.rows(); ++i) {
    double r = 0.0;
    for (int j = 0; j < t.cols(); ++j) {
      r += t(i, j);
      col[j] += t(i, j);
    }
    worst = std::max(worst, std::abs(r - 1.0));
  }
  for (double c : col) {
    worst = std::max(worst, t.rows() == t.cols() ? std::abs(c - 1.0) : c - 1.0);
  }
  return worst;
}

Matrix sample_gumbel(Rng& rng, int rows, int cols, double scale) {
  Matrix g(rows, cols);
  for (double& v : g.values()) v = scale * rng.gumbel();
  return g;
}

Matrix gumbel_sinkhorn(const Matrix& scores, Rng& rng,
                       const SinkhornOptions& options, double noise_scale) {
  check_finite(scores, "gumbel_sinkhorn");
  Matrix z = sample_gumbel(rng, scores.rows(), scores.cols(), noise_scale);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < z.size(); ++k) {
    z.values()[k] += scores.values()[k];
    top = std::max(top, z.values()[k]);
  }
  for (double& v : z.values()) v = std::exp(v - top);
  return sinkhorn(z, options);
}

Matrix gumbel_sinkhorn(const Matrix& scores, std::uint64_t seed,
                       const SinkhornOptions& options, double noise_scale) {
  Rng rng(seed);
  return gumbel_sinkhorn(scores, rng, options, noise_scale);
}

double assignment_score(const Matrix& s, const HardAssignment& p) {
  double total = 0.0;
  for (int i = 0; i < p.rows(); ++i)
    if (p.col[i] != HardAssignment::kUnassigned) total += s(i, p.col[i]);
  return total;
}

namespace {

// Square min-cost assignment by shortest augmenting paths with potentials.
// Returns row -> column and fills the dual potentials.
std::vector<int> min_cost_assignment(const std::vector<double>& cost, int n,
                                     std::vector<double>& u, std::vector<double>& v) {
  const double inf = std::numeric_limits<double>::infinity();
  u.assign(n + 1, 0.0);
  v.assign(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

// Rewrites `match` into the lexicographically smallest perfect matching of
// the bipartite graph `tight` (n x n, row-major), which must contain match.
void lexicographic_matching(const std::vector<char>& tight, int n,
                            std::vector<int>& match) {
  std::vector<int> owner(n);
  for (int i = 0; i < n; ++i) owner[match[i]] = i;
  std::vector<char> locked(n, 0);

  // Alternating path from row `start` to column `target` through unlocked
  // rows; on success the matching is rewritten along it.
  auto reroute = [&](int start, int target) {
    std::vector<int> prev_row(n, -1);  // column -> row that reached it
    std::vector<char> seen(n, 0);
    std::vector<int> queue{start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int r = queue[head];
      for (int c = 0; c < n; ++c) {
        if (!tight[r * n + c] || seen[c]) continue;
        const int o = owner[c];
        if (c != target && (o < 0 || locked[o])) continue;
        seen[c] = 1;
        prev_row[c] = r;
        if (c == target) {
          for (int col = target; col >= 0;) {
            const int row = prev_row[col];
            const int next = row == start ? -1 : match[row];
            match[row] = col;
            owner[col] = row;
            col = next;
          }
          return true;
        }
        queue.push_back(o);
      }
    }
    return false;
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!tight[i * n + j]) continue;
      if (match[i] == j) break;
      const int o = owner[j];
      if (locked[o]) continue;
      // Move i to j; o must find a new column, ideally i's old one.
      const int freed = match[i];
      match[i] = j;
      owner[j] = i;
      owner[freed] = -1;
      locked[i] = 1;
      if (reroute(o, freed)) break;
      locked[i] = 0;
      match[i] = freed;
      owner[freed] = i;
      owner[j] = o;
    }
    locked[i] = 1;
  }
}

}  // namespace

HardAssignment hungarian(const Matrix& s) {
  check_finite(s, "hungarian");
  HardAssignment out;
  out.cols = s.cols();
  out.col.assign(s.rows(), HardAssignment::kUnassigned);
  if (s.rows() == 0 || s.cols() == 0) return out;

  const int n = std::max(s.rows(), s.cols());
  double scale = 0.0;
  for (double v : s.values()) scale = std::max(scale, std::abs(v));
  std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) cost[i * n + j] = -s(i, j);

  std::vector<double> u, v;
  std::vector<int> match = min_cost_assignment(cost, n, u, v);

  const double tol = 1e-11 * std::max(scale, 1e-300) * n;
  std::vector<char> tight(cost.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      tight[i * n + j] = cost[i * n + j] - u[i + 1] - v[j + 1] <= tol;
  for (int i = 0; i < n; ++i) tight[i * n + match[i]] = 1;
  lexicographic_matching(tight, n, match);

  for (int i = 0; i < s.rows(); ++i)
    if (match[i] < s.cols()) out.col[i] = match[i];
  return out;
}

}  // namespace nga
