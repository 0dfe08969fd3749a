#include <gtest/gtest.h>

#include <numeric>

#include "nga/error.h"
#include "nga/qap.h"

using namespace nga;

TEST(Kb, CostAndGenerator) {
  const auto inst = generate_kb_instance(1, 5);
  EXPECT_EQ(inst.size(), 5);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(inst.flow(i, i), 0.0);
    EXPECT_EQ(inst.distance(i, i), 0.0);
    for (int j = 0; j < 5; ++j) {
      EXPECT_EQ(inst.flow(i, j), inst.flow(j, i));
      EXPECT_EQ(inst.distance(i, j), inst.distance(j, i));
    }
  }
  std::vector<int> id(5);
  std::iota(id.begin(), id.end(), 0);
  double direct = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) direct += inst.flow(i, j) * inst.distance(i, j);
  EXPECT_DOUBLE_EQ(kb_cost(inst, id), direct);
  EXPECT_THROW(kb_cost(inst, {0, 1}), InvalidArgument);
}

TEST(Kb, AffinityOrdersPermutationsLikeCost) {
  // vec(P)^T K vec(P) = n(n-1) c - cost, so larger objective is lower cost.
  const auto inst = generate_kb_instance(2, 5);
  const auto k = kb_affinity(inst);
  std::vector<int> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  double c = 0.0, fmax = 0.0, dmax = 0.0;
  for (double v : inst.flow.values()) fmax = std::max(fmax, v);
  for (double v : inst.distance.values()) dmax = std::max(dmax, v);
  c = fmax * dmax;
  do {
    const double j = objective_j(k, HardAssignment{5, perm});
    EXPECT_NEAR(j, 20.0 * c - kb_cost(inst, perm), 1e-9);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Qap, TwoByTwoMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate_kb_instance(seed, 2, 0.0);
    const double best = std::min(kb_cost(inst, {0, 1}), kb_cost(inst, {1, 0}));
    SolverConfig cfg;
    cfg.epochs = 20;
    EXPECT_DOUBLE_EQ(qap_solve(inst, cfg).cost, best);
  }
}

TEST(Qap, BeatsRandomPermutationsOnSmallBattery) {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_kb_instance(seed + 100, 6);
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0;
    int count = 0;
    do {
      total += kb_cost(inst, perm);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    SolverConfig cfg;
    cfg.seed = seed;
    const auto r = qap_solve(inst, cfg);
    wins += r.cost <= total / count;
  }
  EXPECT_GE(wins, 18);
}

TEST(Qap, SelfSimilarInstanceReachesOptimum) {
  for (int n = 3; n <= 8; ++n) {
    auto inst = generate_kb_instance(static_cast<std::uint64_t>(n), n);
    inst.flow = inst.distance;
    const auto best = brute_force_kb(inst);
    const SolverConfig cfg = qap_config();
    const auto r = qap_solve(inst, cfg);
    // Exact up to n = 6; at 7 and 8 the decode lands on a near-optimal
    // permutation (within 0.2%) for these seeds.
    if (n <= 6) {
      EXPECT_NEAR(r.cost, best.cost, 1e-9) << n;
    } else {
      EXPECT_LE(r.cost, 1.01 * best.cost) << n;
    }
  }
}

TEST(Qap, PermutationIsComplete) {
  const auto r = qap_solve(generate_kb_instance(5, 7), SolverConfig{});
  std::vector<int> sorted = r.permutation;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < 7; ++k) EXPECT_EQ(sorted[k], k);
}

TEST(Qap, RejectsBadInput) {
  KbInstance bad{Matrix(3, 3), Matrix(2, 2)};
  EXPECT_THROW(kb_affinity(bad), InvalidArgument);
  const auto rect = AssociationCommonGraph::from_affinity(2, 3, {});
  EXPECT_THROW(qap_solve(rect, SolverConfig{}), InvalidArgument);
  EXPECT_THROW(AssociationCommonGraph::from_affinity(2, 2, {{0, 3, 1.0}}), InvalidArgument);
}
