#include <gtest/gtest.h>

#include "nga/acg.h"
#include "nga/error.h"
#include "nga/generator.h"
#include "nga/oracle.h"
#include "support/oracles.h"

using namespace nga;

namespace {

HardAssignment random_hard(Rng& rng, int n1, int n2) {
  HardAssignment p{n2, oracle::random_injection(rng, n1, n2)};
  return p;
}

// Random pair with n1 <= n2 and a small label alphabet so the ACG is dense
// enough to be interesting.
GraphPairInstance random_pair(Rng& rng) {
  const int n1 = 2 + static_cast<int>(rng.below(6));
  const int n2 = n1 + static_cast<int>(rng.below(3));
  return {"", oracle::random_graph(rng, n1, 0.45, 2, 2), oracle::random_graph(rng, n2, 0.45, 2, 2)};
}

Matrix random_soft(Rng& rng, int n1, int n2) {
  Matrix s(n1, n2);
  for (double& x : s.values()) x = rng.uniform();
  return s;
}

}  // namespace

TEST(BuildAcg, SingleEdgeSelfPair) {
  const LabeledGraph g({"X", "Y"}, {{0, 1, "e"}});
  const auto acg = build_acg(g, g);
  EXPECT_EQ(acg.node_count(), 2);
  EXPECT_EQ(acg.edge_count(), 1u);
  EXPECT_EQ(acg.pair(0), std::make_pair(0, 0));
  EXPECT_EQ(acg.pair(1), std::make_pair(1, 1));
  EXPECT_EQ(acg.node_at(0, 1), -1);
}

TEST(BuildAcg, DisjointAlphabets) {
  const LabeledGraph g1({"C", "C"}, {{0, 1, "single"}});
  const LabeledGraph g2({"N", "N"}, {{0, 1, "single"}});
  const auto acg = build_acg(g1, g2);
  EXPECT_EQ(acg.node_count(), 0);
  EXPECT_EQ(acg.edge_count(), 0u);
  EXPECT_EQ(objective_j(acg, Matrix(2, 2, 0.5)), 0.0);
}

TEST(BuildAcg, EdgeCountMatchesBruteForce) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto pair = random_pair(rng);
    const auto acg = build_acg(pair.g1, pair.g2);
    EXPECT_EQ(static_cast<long>(acg.edge_count()), oracle::count_acg_edges(pair.g1, pair.g2));
    EXPECT_EQ(acg.node_count(), oracle::count_compatible_pairs(pair.g1, pair.g2));
  }
}

TEST(BuildAcg, NodesLexicographicAndAdjacencySymmetric) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const auto pair = random_pair(rng);
    const auto acg = build_acg(pair.g1, pair.g2);
    for (int a = 1; a < acg.node_count(); ++a) EXPECT_LT(acg.pair(a - 1), acg.pair(a));
    for (int a = 0; a < acg.node_count(); ++a) {
      const auto nb = acg.neighbors(a);
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
      for (int b : nb) {
        EXPECT_NE(a, b);
        const auto back = acg.neighbors(b);
        EXPECT_TRUE(std::binary_search(back.begin(), back.end(), a));
      }
    }
  }
}

TEST(BuildAcg, EdgeCountBound) {
  // M counts ordered orientations of e2 per e1, so M <= 2 |E1| |E2|.
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto pair = random_pair(rng);
    const auto acg = build_acg(pair.g1, pair.g2);
    EXPECT_LE(acg.edge_count(),
              2u * pair.g1.edge_count() * static_cast<std::size_t>(pair.g2.edge_count()));
  }
}

TEST(ObjectiveJ, ZeroAssignment) {
  const auto g = generate_molecular_like(1, 6, {}, 2.0);
  EXPECT_EQ(objective_j(build_acg(g, g), Matrix(6, 6)), 0.0);
}

TEST(ObjectiveJ, MatchesDenseEvaluator) {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const auto pair = random_pair(rng);
    const auto acg = build_acg(pair.g1, pair.g2);
    const Matrix s = random_soft(rng, pair.g1.node_count(), pair.g2.node_count());
    EXPECT_NEAR(objective_j(acg, s), oracle::dense_objective(pair.g1, pair.g2, s), 1e-9);
  }
}

TEST(ObjectiveJ, ShapeMismatchThrows) {
  const auto g = generate_molecular_like(1, 4, {}, 2.0);
  EXPECT_THROW(objective_j(build_acg(g, g), Matrix(4, 3)), InvalidArgument);
}

TEST(ObjectiveJ, SymmetricUnderSwap) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto pair = random_pair(rng);
    const Matrix s = random_soft(rng, pair.g1.node_count(), pair.g2.node_count());
    const double forward = objective_j(build_acg(pair.g1, pair.g2), s);
    const double backward = objective_j(build_acg(pair.g2, pair.g1), s.transposed());
    EXPECT_NEAR(forward, backward, 1e-9);
    EXPECT_NEAR(objective_j(build_acg(pair.g1, pair.g2).transposed(), s.transposed()), forward,
                1e-9);
  }
}

TEST(Decode, IdentityOnIdenticalGraphs) {
  const auto g = generate_molecular_like(8, 9, {}, 2.4);
  const auto acg = build_acg(g, g);
  HardAssignment p{9, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  const auto r = decode_common_subgraph(acg, p);
  EXPECT_EQ(r.size, g.edge_count());
  EXPECT_EQ(objective_j(acg, p), 2.0 * g.edge_count());
  EXPECT_TRUE(verify_common_subgraph(g, g, r));
}

TEST(Decode, NoCompatibleSelection) {
  const LabeledGraph g1({"C", "C"}, {{0, 1, "s"}});
  const LabeledGraph g2({"N", "N"}, {{0, 1, "s"}});
  const auto r = decode_common_subgraph(build_acg(g1, g2), HardAssignment{2, {0, 1}});
  EXPECT_EQ(r.size, 0);
  EXPECT_TRUE(r.mapping.empty());
}

TEST(Decode, RejectsNonInjective) {
  const auto g = generate_molecular_like(1, 4, {}, 2.0);
  const auto acg = build_acg(g, g);
  EXPECT_THROW(decode_common_subgraph(acg, HardAssignment{4, {0, 0, 1, 2}}), InvalidArgument);
  EXPECT_THROW(decode_common_subgraph(acg, HardAssignment{4, {0, 1, 2}}), InvalidArgument);
  EXPECT_THROW(decode_common_subgraph(acg, HardAssignment{4, {0, 1, 2, 4}}), InvalidArgument);
}

TEST(Decode, EveryInjectionGivesAValidCommonSubgraph) {
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    const auto pair = random_pair(rng);
    const auto acg = build_acg(pair.g1, pair.g2);
    const auto p = random_hard(rng, pair.g1.node_count(), pair.g2.node_count());
    const auto r = decode_common_subgraph(acg, p);
    ASSERT_TRUE(verify_common_subgraph(pair.g1, pair.g2, r)) << k;
    EXPECT_EQ(2.0 * r.size, objective_j(acg, p));
    EXPECT_EQ(r.objective, objective_j(acg, p));
    EXPECT_EQ(r.size, oracle::common_edges_under_map(pair.g1, pair.g2, p.col));
  }
}

TEST(Decode, TransposedResultIsValidForSwappedPair) {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto pair = random_pair(rng);
    const auto acg = build_acg(pair.g1, pair.g2);
    const auto r = decode_common_subgraph(
        acg, random_hard(rng, pair.g1.node_count(), pair.g2.node_count()));
    EXPECT_TRUE(verify_common_subgraph(pair.g2, pair.g1, r.transposed()));
    EXPECT_EQ(r.transposed().transposed(), r);
  }
}

TEST(Affinity, ValidatesInput) {
  EXPECT_THROW(AssociationCommonGraph::from_affinity(2, 2, {{0, 3, 1.0}}), InvalidArgument);
  EXPECT_THROW(AssociationCommonGraph::from_affinity(2, 2, {{0, 3, 1.0}, {3, 0, 2.0}}),
               InvalidArgument);
  EXPECT_THROW(AssociationCommonGraph::from_affinity(2, 2, {{0, 3, -1.0}, {3, 0, -1.0}}),
               InvalidArgument);
  EXPECT_THROW(AssociationCommonGraph::from_affinity(2, 2, {{0, 4, 1.0}, {4, 0, 1.0}}),
               InvalidArgument);
  const auto acg = AssociationCommonGraph::from_affinity(2, 2, {{0, 3, 1.5}, {3, 0, 1.5}});
  EXPECT_EQ(acg.node_count(), 4);
  EXPECT_TRUE(acg.weighted());
  EXPECT_DOUBLE_EQ(objective_j(acg, HardAssignment{2, {0, 1}}), 3.0);
  EXPECT_DOUBLE_EQ(objective_j(acg, HardAssignment{2, {1, 0}}), 0.0);
}

TEST(HardAssignmentType, InjectivityAndMatrix) {
  HardAssignment p{3, {2, HardAssignment::kUnassigned, 0}};
  EXPECT_TRUE(p.is_injective());
  const Matrix m = p.to_matrix();
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_EQ(m(1, 0) + m(1, 1) + m(1, 2), 0.0);
  EXPECT_FALSE((HardAssignment{3, {1, 1}}).is_injective());
}
