#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

namespace {

const std::string* edge_label(const nga::LabeledGraph& g, int u, int v) {
  for (const auto& e : g.edges())
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return &e.label;
  return nullptr;
}

}  // namespace

std::vector<double> dense_affinity(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2) {
  const int n1 = g1.node_count(), n2 = g2.node_count();
  const int cells = n1 * n2;
  std::vector<double> a(static_cast<std::size_t>(cells) * cells, 0.0);
  for (int i = 0; i < n1; ++i)
    for (int x = 0; x < n2; ++x)
      for (int j = 0; j < n1; ++j)
        for (int y = 0; y < n2; ++y) {
          if (g1.node_label(i) != g2.node_label(x)) continue;
          if (g1.node_label(j) != g2.node_label(y)) continue;
          const std::string* l1 = edge_label(g1, i, j);
          const std::string* l2 = edge_label(g2, x, y);
          if (l1 && l2 && *l1 == *l2) {
            a[static_cast<std::size_t>(i * n2 + x) * cells + (j * n2 + y)] = 1.0;
          }
        }
  return a;
}

double dense_objective(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2,
                       const nga::Matrix& s) {
  const auto a = dense_affinity(g1, g2);
  const std::size_t cells = s.size();
  double total = 0.0;
  for (std::size_t p = 0; p < cells; ++p)
    for (std::size_t q = 0; q < cells; ++q)
      total += s.values()[p] * a[p * cells + q] * s.values()[q];
  return total;
}

long count_acg_edges(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2) {
  long count = 0;
  for (const auto& e1 : g1.edges())
    for (const auto& e2 : g2.edges()) {
      if (e1.label != e2.label) continue;
      const int ends[2][2] = {{e2.u, e2.v}, {e2.v, e2.u}};
      for (const auto& o : ends) {
        if (g1.node_label(e1.u) == g2.node_label(o[0]) &&
            g1.node_label(e1.v) == g2.node_label(o[1])) {
          ++count;
        }
      }
    }
  return count;
}

int count_compatible_pairs(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2) {
  int count = 0;
  for (const auto& a : g1.node_labels())
    for (const auto& b : g2.node_labels()) count += a == b;
  return count;
}

namespace {

void best_rec(const nga::Matrix& s, int row, std::vector<char>& used, double acc,
              double& best) {
  if (row == s.rows()) {
    best = std::max(best, acc);
    return;
  }
  for (int c = 0; c < s.cols(); ++c) {
    if (used[c]) continue;
    used[c] = 1;
    best_rec(s, row + 1, used, acc + s(row, c), best);
    used[c] = 0;
  }
}

}  // namespace

double best_assignment_score(const nga::Matrix& s) {
  std::vector<char> used(s.cols(), 0);
  double best = -INFINITY;
  best_rec(s, 0, used, 0.0, best);
  return best;
}

nga::Matrix sinkhorn_limit(nga::Matrix m, double tol, int max_iters) {
  for (int it = 0; it < max_iters; ++it) {
    nga::Matrix prev = m;
    for (int i = 0; i < m.rows(); ++i) {
      double r = 0.0;
      for (int j = 0; j < m.cols(); ++j) r += m(i, j);
      for (int j = 0; j < m.cols(); ++j) m(i, j) /= r;
    }
    for (int j = 0; j < m.cols(); ++j) {
      double c = 0.0;
      for (int i = 0; i < m.rows(); ++i) c += m(i, j);
      for (int i = 0; i < m.rows(); ++i) m(i, j) /= c;
    }
    double change = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k)
      change = std::max(change, std::abs(m.values()[k] - prev.values()[k]));
    if (change < tol) break;
  }
  return m;
}

std::vector<int> random_injection(nga::Rng& rng, int n1, int n2) {
  std::vector<int> cols(n2);
  std::iota(cols.begin(), cols.end(), 0);
  for (int k = n2 - 1; k > 0; --k) std::swap(cols[k], cols[rng.below(k + 1)]);
  cols.resize(n1);
  return cols;
}

double central_difference(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x, std::size_t index, double h) {
  const double x0 = x[index];
  x[index] = x0 + h;
  const double up = f(x);
  x[index] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

int common_edges_under_map(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2,
                           const std::vector<int>& map) {
  int count = 0;
  for (const auto& e : g1.edges()) {
    const int a = map[e.u], b = map[e.v];
    if (a < 0 || b < 0) continue;
    if (g1.node_label(e.u) != g2.node_label(a) || g1.node_label(e.v) != g2.node_label(b)) continue;
    const std::string* l = edge_label(g2, a, b);
    if (l && *l == e.label) ++count;
  }
  return count;
}

double reciprocal_rank(const std::vector<std::string>& ranked, const std::set<std::string>& rel) {
  for (std::size_t r = 0; r < ranked.size(); ++r)
    if (rel.count(ranked[r])) return 1.0 / static_cast<double>(r + 1);
  return 0.0;
}

double precision_at(const std::vector<std::string>& ranked, const std::set<std::string>& rel,
                    int k) {
  int hits = 0;
  for (int r = 0; r < k && r < static_cast<int>(ranked.size()); ++r) hits += rel.count(ranked[r]);
  return static_cast<double>(hits) / k;
}

double average_precision(const std::vector<std::string>& ranked,
                         const std::set<std::string>& rel) {
  double sum = 0.0;
  for (std::size_t r = 0; r < ranked.size(); ++r)
    if (rel.count(ranked[r])) sum += precision_at(ranked, rel, static_cast<int>(r + 1));
  return sum / static_cast<double>(rel.size());
}

nga::LabeledGraph random_graph(nga::Rng& rng, int n, double p, int node_labels,
                               int edge_labels) {
  std::vector<std::string> labels(n);
  for (auto& l : labels) l = "n" + std::to_string(rng.below(node_labels));
  std::vector<nga::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.push_back({u, v, "e" + std::to_string(rng.below(edge_labels))});
  return nga::LabeledGraph(std::move(labels), std::move(edges));
}

}  // namespace oracle
