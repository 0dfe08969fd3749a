#pragma once

#include <cstdint>
#include <vector>

#include "nga/graph.h"

namespace nga {

struct LabelAlphabet {
  int node = 4;
  int edge = 3;
};

// Connected random graph with molecule-like statistics.
//
// A random recursive tree provides connectivity; extra edges are then drawn
// uniformly among non-adjacent pairs until the edge count reaches
// max(n - 1, round_stochastic(n * avg_degree / 2)). Label k of an alphabet of
// size K is drawn with probability proportional to 1 / (k + 1)^2, so label 0
// dominates the way carbon and single bonds do. Node labels are named
// C, N, O, S, ... and edge labels single, double, aromatic, triple, ...
//
// Throws GraphError(kInvalidArgument) when n < 1, avg_degree < 0 or
// avg_degree > n - 1.
LabeledGraph generate_molecular_like(std::uint64_t seed, int n,
                                     LabelAlphabet alphabet,
                                     double avg_degree);

// g1 and g2 each equal `base` plus `extra_per_side` new nodes, each attached
// to a random existing node and, with probability 1/2, joined by one more
// edge to another random non-adjacent node. Base node ids are preserved, so
// the identity on the base nodes plants a common subgraph with |E(base)|
// edges.
GraphPairInstance perturb_subgraph_pair(std::uint64_t seed,
                                        const LabeledGraph& base,
                                        int extra_per_side,
                                        LabelAlphabet alphabet = {});

// Uniformly random permutation of node ids; returns the permuted graph.
LabeledGraph shuffle_nodes(std::uint64_t seed, const LabeledGraph& g);

// Pair battery used by benches and acceptance tests. Even entries are two
// independent molecule-like graphs; odd entries are planted pairs (a base
// graph perturbed with 1-2 extra nodes per side, g2 node ids shuffled). Every
// graph has between n_min and n_max nodes.
std::vector<GraphPairInstance> generate_battery(std::uint64_t seed, int count,
                                                int n_min, int n_max,
                                                LabelAlphabet alphabet = {},
                                                double avg_degree = 2.2);

}  // namespace nga
