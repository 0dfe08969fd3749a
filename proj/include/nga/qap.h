#pragma once

#include <cstdint>
#include <vector>

#include "nga/acg.h"
#include "nga/matrix.h"
#include "nga/nga.h"

namespace nga {

// Koopmans-Beckmann QAP: minimize sum_ij F[i][j] * D[p(i)][p(j)].
struct KbInstance {
  Matrix flow;
  Matrix distance;

  int size() const { return flow.rows(); }
};

// Locations uniform in the unit square with Euclidean distances; flows
// uniform in [0, 1], symmetrized, zero diagonal, each off-diagonal pair
// zeroed with probability `zero_prob`.
KbInstance generate_kb_instance(std::uint64_t seed, int n, double zero_prob = 0.7);

double kb_cost(const KbInstance& instance, const std::vector<int>& perm);

// Pair affinity K[(i,a),(j,b)] = c - (F_ij D_ab + F_ji D_ba) / 2 for i != j
// and a != b, c = max_ij F_ij * max_ab D_ab. Maximizing vec(P)^T K vec(P)
// over permutations minimizes kb_cost. Throws InvalidArgument unless F and D
// are square, equally sized and finite.
AssociationCommonGraph kb_affinity(const KbInstance& instance);

struct QapResult {
  std::vector<int> permutation;  // row -> column
  double objective = 0.0;        // vec(P)^T K vec(P)
  double cost = 0.0;             // kb_cost, for KB instances
};

// Solver settings for QAP mode: the defaults with a larger Adam step and more
// Gumbel samples. Chosen on KB instances with seeds 5000..5049, n = 8.
SolverConfig qap_config();

// Runs the solver pipeline of cfg.variant directly on a square affinity.
QapResult qap_solve(const AssociationCommonGraph& affinity, const SolverConfig& cfg);
QapResult qap_solve(const KbInstance& instance, const SolverConfig& cfg);

// Minimum kb_cost over all n! permutations; lexicographically first optimum.
QapResult brute_force_kb(const KbInstance& instance);

}  // namespace nga
