#include "nga/acg.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "nga/error.h"

namespace nga {

bool HardAssignment::is_injective() const {
  std::vector<bool> used(cols, false);
  for (int c : col) {
    if (c == kUnassigned) continue;
    if (c < 0 || c >= cols || used[c]) return false;
    used[c] = true;
  }
  return true;
}

Matrix HardAssignment::to_matrix() const {
  Matrix p(rows(), cols);
  for (int i = 0; i < rows(); ++i)
    if (col[i] != kUnassigned) p(i, col[i]) = 1.0;
  return p;
}

AssociationCommonGraph AssociationCommonGraph::assemble(
    int n1, int n2, std::vector<std::pair<int, int>> pairs,
    std::vector<std::vector<std::pair<int, double>>> adjacency, bool weighted) {
  AssociationCommonGraph acg;
  acg.n1_ = n1;
  acg.n2_ = n2;
  acg.pairs_ = std::move(pairs);
  acg.cell_node_.assign(static_cast<std::size_t>(n1) * n2, -1);
  for (int k = 0; k < acg.node_count(); ++k) acg.cell_node_[acg.cell(k)] = k;

  acg.row_ptr_.assign(1, 0);
  std::size_t off_diagonal = 0;
  for (int k = 0; k < acg.node_count(); ++k) {
    auto& row = adjacency[k];
    std::sort(row.begin(), row.end());
    for (auto [l, w] : row) {
      acg.col_idx_.push_back(l);
      if (weighted) acg.weights_.push_back(w);
      if (l != k) ++off_diagonal;
    }
    acg.row_ptr_.push_back(static_cast<int>(acg.col_idx_.size()));
  }
  acg.edge_count_ = off_diagonal / 2;
  return acg;
}

AssociationCommonGraph build_acg(const LabeledGraph& g1, const LabeledGraph& g2) {
  const InternedLabels ids = intern_labels(g1, g2);
  const int n1 = g1.node_count();
  const int n2 = g2.node_count();

  std::vector<std::pair<int, int>> pairs;
  std::vector<int> node_of(static_cast<std::size_t>(n1) * n2, -1);
  for (int u = 0; u < n1; ++u)
    for (int v = 0; v < n2; ++v)
      if (ids.node1[u] == ids.node2[v]) {
        node_of[u * n2 + v] = static_cast<int>(pairs.size());
        pairs.emplace_back(u, v);
      }

  std::vector<std::vector<std::pair<int, double>>> adjacency(pairs.size());
  auto link = [&](int u1, int v1, int u2, int v2) {
    const int a = node_of[u1 * n2 + v1];
    const int b = node_of[u2 * n2 + v2];
    if (a < 0 || b < 0) return;
    adjacency[a].emplace_back(b, 1.0);
    adjacency[b].emplace_back(a, 1.0);
  };
  for (int e1 = 0; e1 < g1.edge_count(); ++e1) {
    const Edge& x = g1.edge(e1);
    for (int e2 = 0; e2 < g2.edge_count(); ++e2) {
      if (ids.edge1[e1] != ids.edge2[e2]) continue;
      const Edge& y = g2.edge(e2);
      // Both orientations of the edge correspondence. They never produce the
      // same ACG edge because y.u != y.v.
      link(x.u, y.u, x.v, y.v);
      link(x.u, y.v, x.v, y.u);
    }
  }
  return AssociationCommonGraph::assemble(n1, n2, std::move(pairs),
                                          std::move(adjacency), false);
}

AssociationCommonGraph AssociationCommonGraph::from_affinity(
    int n1, int n2, std::vector<AffinityEntry> entries) {
  if (n1 < 0 || n2 < 0) throw InvalidArgument("negative affinity shape");
  const int cells = n1 * n2;
  std::map<std::pair<int, int>, double> lookup;
  for (const auto& e : entries) {
    if (e.cell_a < 0 || e.cell_a >= cells || e.cell_b < 0 || e.cell_b >= cells) {
      throw InvalidArgument("affinity entry outside the assignment cells");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw InvalidArgument("affinity weights must be finite and non-negative");
    }
    if (!lookup.emplace(std::pair(e.cell_a, e.cell_b), e.weight).second) {
      throw InvalidArgument("duplicate affinity entry");
    }
  }
  for (const auto& [key, w] : lookup) {
    auto it = lookup.find({key.second, key.first});
    if (it == lookup.end() ||
        std::abs(it->second - w) > 1e-12 * std::max(1.0, std::abs(w))) {
      throw InvalidArgument("affinity matrix is not symmetric");
    }
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(cells);
  for (int u = 0; u < n1; ++u)
    for (int v = 0; v < n2; ++v) pairs.emplace_back(u, v);
  std::vector<std::vector<std::pair<int, double>>> adjacency(cells);
  for (const auto& [key, w] : lookup) {
    if (w != 0.0) adjacency[key.first].emplace_back(key.second, w);
  }
  return assemble(n1, n2, std::move(pairs), std::move(adjacency), true);
}

double AssociationCommonGraph::max_degree() const {
  double best = 0.0;
  for (int k = 0; k < node_count(); ++k) {
    double d = 0.0;
    const auto nb = neighbors(k);
    for (std::size_t t = 0; t < nb.size(); ++t) d += std::abs(weight(k, t));
    best = std::max(best, d);
  }
  return best;
}

void AssociationCommonGraph::multiply(std::span<const double> x,
                                      std::span<double> y) const {
  const std::size_t cells = static_cast<std::size_t>(n1_) * n2_;
  if (x.size() != cells || y.size() != cells) {
    throw InvalidArgument("vector length does not match n1 * n2");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (int k = 0; k < node_count(); ++k) {
    double acc = 0.0;
    for (int t = row_ptr_[k]; t < row_ptr_[k + 1]; ++t) {
      const double w = weights_.empty() ? 1.0 : weights_[t];
      acc += w * x[cell(col_idx_[t])];
    }
    y[cell(k)] = acc;
  }
}

double AssociationCommonGraph::quadratic_form(std::span<const double> x) const {
  const std::size_t cells = static_cast<std::size_t>(n1_) * n2_;
  if (x.size() != cells) throw InvalidArgument("vector length does not match n1 * n2");
  double total = 0.0;
  for (int k = 0; k < node_count(); ++k) {
    double acc = 0.0;
    for (int t = row_ptr_[k]; t < row_ptr_[k + 1]; ++t) {
      const double w = weights_.empty() ? 1.0 : weights_[t];
      acc += w * x[cell(col_idx_[t])];
    }
    total += x[cell(k)] * acc;
  }
  return total;
}

AssociationCommonGraph AssociationCommonGraph::transposed() const {
  std::vector<int> order(node_count());
  for (int k = 0; k < node_count(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(pairs_[a].second, pairs_[a].first) <
           std::pair(pairs_[b].second, pairs_[b].first);
  });
  std::vector<int> new_id(node_count());
  std::vector<std::pair<int, int>> pairs(node_count());
  for (int k = 0; k < node_count(); ++k) {
    new_id[order[k]] = k;
    pairs[k] = {pairs_[order[k]].second, pairs_[order[k]].first};
  }
  std::vector<std::vector<std::pair<int, double>>> adjacency(node_count());
  for (int k = 0; k < node_count(); ++k) {
    const auto nb = neighbors(k);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      adjacency[new_id[k]].emplace_back(new_id[nb[t]], weight(k, static_cast<int>(t)));
    }
  }
  return assemble(n2_, n1_, std::move(pairs), std::move(adjacency), weighted());
}

double objective_j(const AssociationCommonGraph& acg, const Matrix& s) {
  if (s.rows() != acg.n1() || s.cols() != acg.n2()) {
    throw InvalidArgument("assignment shape " + std::to_string(s.rows()) + "x" +
                          std::to_string(s.cols()) + " does not match ACG " +
                          std::to_string(acg.n1()) + "x" + std::to_string(acg.n2()));
  }
  return acg.quadratic_form(s.values());
}

double objective_j(const AssociationCommonGraph& acg, const HardAssignment& p) {
  if (p.rows() != acg.n1() || p.cols != acg.n2()) {
    throw InvalidArgument("hard assignment shape does not match ACG");
  }
  return objective_j(acg, p.to_matrix());
}

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair(a, b) : std::pair(b, a); }

// Sorts edge correspondences by the G1 edge, keeping the G2 side aligned.
void sort_edges(CommonSubgraphResult& r) {
  std::vector<std::size_t> order(r.edges_g1.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.edges_g1[a] < r.edges_g1[b];
  });
  std::vector<std::pair<int, int>> e1, e2;
  for (auto k : order) {
    e1.push_back(r.edges_g1[k]);
    e2.push_back(r.edges_g2[k]);
  }
  r.edges_g1 = std::move(e1);
  r.edges_g2 = std::move(e2);
}

}  // namespace

CommonSubgraphResult CommonSubgraphResult::transposed() const {
  CommonSubgraphResult t;
  for (auto [u, v] : mapping) t.mapping.emplace_back(v, u);
  std::sort(t.mapping.begin(), t.mapping.end());
  for (std::size_t k = 0; k < edges_g1.size(); ++k) {
    auto [c, d] = edges_g2[k];
    auto [a, b] = edges_g1[k];
    if (c > d) {
      std::swap(c, d);
      std::swap(a, b);
    }
    t.edges_g1.emplace_back(c, d);
    t.edges_g2.emplace_back(a, b);
  }
  sort_edges(t);
  t.size = size;
  t.objective = objective;
  return t;
}

CommonSubgraphResult decode_common_subgraph(const AssociationCommonGraph& acg,
                                            const HardAssignment& p) {
  if (p.rows() != acg.n1() || p.cols != acg.n2()) {
    throw InvalidArgument("hard assignment shape does not match ACG");
  }
  if (!p.is_injective()) throw InvalidArgument("hard assignment is not injective");

  CommonSubgraphResult r;
  std::vector<bool> selected(acg.node_count(), false);
  for (int u = 0; u < p.rows(); ++u) {
    if (p.col[u] == HardAssignment::kUnassigned) continue;
    const int k = acg.node_at(u, p.col[u]);
    if (k < 0) continue;
    selected[k] = true;
    r.mapping.emplace_back(u, p.col[u]);
  }
  double objective = 0.0;
  for (int k = 0; k < acg.node_count(); ++k) {
    if (!selected[k]) continue;
    const auto nb = acg.neighbors(k);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      const int l = nb[t];
      if (!selected[l]) continue;
      objective += acg.weight(k, static_cast<int>(t));
      if (l <= k) continue;
      auto [a, c] = acg.pair(k);
      auto [b, d] = acg.pair(l);
      // a < b always: nodes are ordered by u first and a != b.
      r.edges_g1.push_back(ordered(a, b));
      r.edges_g2.push_back(a < b ? std::pair(c, d) : std::pair(d, c));
    }
  }
  sort_edges(r);
  r.size = static_cast<int>(r.edges_g1.size());
  r.objective = objective;
  return r;
}

}  // namespace nga
