#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nga/graph.h"
#include "nga/matrix.h"

namespace nga {

// Injective row -> column map; equivalent to a binary P with row sums <= 1
// and column sums <= 1.
struct HardAssignment {
  static constexpr int kUnassigned = -1;

  int cols = 0;
  std::vector<int> col;  // one entry per row

  int rows() const { return static_cast<int>(col.size()); }
  bool is_injective() const;
  Matrix to_matrix() const;

  bool operator==(const HardAssignment&) const = default;
};

struct AffinityEntry {
  int cell_a = 0;  // row-major cell index i * n2 + a
  int cell_b = 0;
  double weight = 0.0;
};

// Association Common Graph: product graph over label-compatible node pairs.
//
// Nodes are pairs (u, v), u in G1, v in G2, with equal node labels, numbered
// in lexicographic (u, v) order. {(u_i, v_i), (u_j, v_j)} is an edge iff
// (u_i, u_j) in E(G1), (v_i, v_j) in E(G2) and the two edge labels are equal.
// Adjacency is symmetric CSR with zero diagonal and unit weights.
//
// The same type doubles as a generic sparse pair affinity (see
// from_affinity) so the solver can run on QAPs that have no graph behind
// them; those carry explicit weights.
class AssociationCommonGraph {
 public:
  AssociationCommonGraph() = default;

  // Every cell of an n1 x n2 assignment is a node. `entries` must list both
  // (a, b) and (b, a); weights must be finite, non-negative and symmetric.
  static AssociationCommonGraph from_affinity(int n1, int n2,
                                              std::vector<AffinityEntry> entries);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int node_count() const { return static_cast<int>(pairs_.size()); }
  // Undirected edge count M (self-entries of a weighted affinity excluded).
  std::size_t edge_count() const { return edge_count_; }
  bool weighted() const { return !weights_.empty(); }

  std::pair<int, int> pair(int k) const { return pairs_[k]; }
  int cell(int k) const { return pairs_[k].first * n2_ + pairs_[k].second; }
  // ACG node for (u, v), or -1 when the labels are incompatible.
  int node_at(int u, int v) const { return cell_node_[u * n2_ + v]; }
  bool is_node_cell(int cell) const { return cell_node_[cell] >= 0; }

  std::span<const int> neighbors(int k) const {
    return std::span<const int>(col_idx_).subspan(row_ptr_[k],
                                                  row_ptr_[k + 1] - row_ptr_[k]);
  }
  // Weight of the t-th neighbour slot of node k.
  double weight(int k, int t) const {
    return weights_.empty() ? 1.0 : weights_[row_ptr_[k] + t];
  }
  // Largest weighted degree; A + (max_degree + eps) I is positive definite.
  double max_degree() const;

  // y = A x over vec(S) cells (size n1 * n2). Cells without a node get 0.
  void multiply(std::span<const double> x, std::span<double> y) const;
  // x^T A x over vec(S) cells.
  double quadratic_form(std::span<const double> x) const;

  // The ACG of (G2, G1): pairs swapped, same edges.
  AssociationCommonGraph transposed() const;

 private:
  friend AssociationCommonGraph build_acg(const LabeledGraph&,
                                          const LabeledGraph&);
  static AssociationCommonGraph assemble(
      int n1, int n2, std::vector<std::pair<int, int>> pairs,
      std::vector<std::vector<std::pair<int, double>>> adjacency, bool weighted);

  int n1_ = 0;
  int n2_ = 0;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> cell_node_;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> weights_;
  std::size_t edge_count_ = 0;
};

AssociationCommonGraph build_acg(const LabeledGraph& g1, const LabeledGraph& g2);

// J(S) = vec(S)^T A vec(S). Entries of S at cells without an ACG node do not
// contribute. Throws InvalidArgument on a shape mismatch.
double objective_j(const AssociationCommonGraph& acg, const Matrix& s);
double objective_j(const AssociationCommonGraph& acg, const HardAssignment& p);

struct CommonSubgraphResult {
  // Selected label-compatible pairs (u in G1, v in G2), sorted by u.
  std::vector<std::pair<int, int>> mapping;
  // edges_g1[k] = (a, b) with a < b; edges_g2[k] = (mapping(a), mapping(b)).
  std::vector<std::pair<int, int>> edges_g1;
  std::vector<std::pair<int, int>> edges_g2;
  int size = 0;
  double objective = 0.0;

  // Same common subgraph seen from (G2, G1).
  CommonSubgraphResult transposed() const;

  bool operator==(const CommonSubgraphResult&) const = default;
};

// Keeps every ACG edge whose two endpoints are selected by p, i.e. the
// nonzeros of (vec(P) vec(P)^T) . A. Throws InvalidArgument if p is not
// injective or its shape does not match.
CommonSubgraphResult decode_common_subgraph(const AssociationCommonGraph& acg,
                                            const HardAssignment& p);

}  // namespace nga
