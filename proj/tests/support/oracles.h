#pragma once

// Slow, independent reference implementations. None of these call into the
// library code they are used to check.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nga/graph.h"
#include "nga/matrix.h"
#include "nga/rng.h"

namespace oracle {

// Dense (n1 n2) x (n1 n2) affinity built straight from the two graphs:
// entry [(i,a),(j,b)] = 1 iff labels of i,a and j,b agree and (i,j), (a,b)
// are edges with the same label.
std::vector<double> dense_affinity(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2);

// vec(S)^T A vec(S) with the dense affinity above.
double dense_objective(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2,
                       const nga::Matrix& s);

// Undirected ACG edges counted over every (e1, e2) edge pair and both
// orientations of e2.
long count_acg_edges(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2);

// Number of (u, v) pairs with equal node labels.
int count_compatible_pairs(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2);

// Max over injective maps rows -> columns of the summed entries (rows <=
// cols), by recursion over every map.
double best_assignment_score(const nga::Matrix& s);

// Alternating normalization until entries move less than tol.
nga::Matrix sinkhorn_limit(nga::Matrix m, double tol = 1e-15, int max_iters = 1000000);

// Uniformly random injective map of n1 rows into n2 >= n1 columns.
std::vector<int> random_injection(nga::Rng& rng, int n1, int n2);

// Central difference of f along coordinate `index`.
double central_difference(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x, std::size_t index, double h);

// Edges of the common subgraph induced by a full node map from g1 into g2
// (map[u] = -1 leaves u out).
int common_edges_under_map(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2,
                           const std::vector<int>& map);

// Retrieval metrics written from their textbook definitions. `ranked` lists
// target ids best first.
double reciprocal_rank(const std::vector<std::string>& ranked, const std::set<std::string>& rel);
double precision_at(const std::vector<std::string>& ranked, const std::set<std::string>& rel,
                    int k);
double average_precision(const std::vector<std::string>& ranked,
                         const std::set<std::string>& rel);

// Random labeled graph with n nodes, each possible edge present with
// probability p.
nga::LabeledGraph random_graph(nga::Rng& rng, int n, double p, int node_labels,
                               int edge_labels);

}  // namespace oracle
