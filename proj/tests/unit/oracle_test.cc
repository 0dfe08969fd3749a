#include <gtest/gtest.h>

#include "nga/error.h"
#include "nga/generator.h"
#include "nga/oracle.h"
#include "support/oracles.h"

using namespace nga;

namespace {

// Exhaustive maximum over every partial injective map, written without the
// library: each g1 node goes to an unused g2 node or stays out.
int brute_force_size(const LabeledGraph& g1, const LabeledGraph& g2) {
  std::vector<int> map(g1.node_count(), -1);
  std::vector<char> used(g2.node_count(), 0);
  int best = 0;
  std::function<void(int)> rec = [&](int u) {
    if (u == g1.node_count()) {
      best = std::max(best, oracle::common_edges_under_map(g1, g2, map));
      return;
    }
    map[u] = -1;
    rec(u + 1);
    for (int v = 0; v < g2.node_count(); ++v) {
      if (used[v] || g1.node_label(u) != g2.node_label(v)) continue;
      used[v] = 1;
      map[u] = v;
      rec(u + 1);
      used[v] = 0;
      map[u] = -1;
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST(ExactMces, IdenticalGraphs) {
  const auto g = generate_molecular_like(5, 9, {}, 2.4);
  const auto r = exact_mces(g, g);
  EXPECT_EQ(r.size, g.edge_count());
  EXPECT_TRUE(verify_common_subgraph(g, g, r));
}

TEST(ExactMces, DisjointAlphabets) {
  const LabeledGraph g1({"C", "C"}, {{0, 1, "s"}});
  const LabeledGraph g2({"N", "N"}, {{0, 1, "s"}});
  EXPECT_EQ(exact_mces(g1, g2).size, 0);
  EXPECT_EQ(exhaustive_mces(g1, g2).size, 0);
}

TEST(ExactMces, AgreesWithExhaustiveSearch) {
  Rng rng(9);
  for (int k = 0; k < 120; ++k) {
    const int n1 = 2 + static_cast<int>(rng.below(6));
    const int n2 = 2 + static_cast<int>(rng.below(6));
    const auto g1 = oracle::random_graph(rng, n1, 0.4, 2, 2);
    const auto g2 = oracle::random_graph(rng, n2, 0.4, 2, 2);
    const auto bnb = exact_mces(g1, g2);
    const auto ex = exhaustive_mces(g1, g2);
    ASSERT_EQ(bnb.size, ex.size) << k;
    EXPECT_TRUE(verify_common_subgraph(g1, g2, bnb));
    EXPECT_TRUE(verify_common_subgraph(g1, g2, ex));
    if (n1 <= 5 && n2 <= 5) {
      EXPECT_EQ(bnb.size, brute_force_size(g1, g2)) << k;
    }
  }
}

TEST(ExactMces, BudgetRefusalIsDistinct) {
  const auto g = generate_molecular_like(1, 12, {}, 2.0);
  EXPECT_THROW(exact_mces(g, g), BudgetExceeded);
  OracleBudget forced;
  forced.force = true;
  EXPECT_EQ(exact_mces(g, g, forced).size, g.edge_count());
}

TEST(ExactMces, TimeLimit) {
  const auto g1 = generate_molecular_like(2, 24, {1, 1}, 3.0);
  const auto g2 = generate_molecular_like(3, 24, {1, 1}, 3.0);
  OracleBudget budget;
  budget.force = true;
  budget.time_limit_ms = 20;
  EXPECT_THROW(exact_mces(g1, g2, budget), BudgetExceeded);
}

TEST(ExactMces, AddingAnEdgeNeverShrinks) {
  Rng rng(10);
  for (int k = 0; k < 60; ++k) {
    const auto g1 = oracle::random_graph(rng, 6, 0.3, 2, 2);
    const auto g2 = oracle::random_graph(rng, 6, 0.3, 2, 2);
    const auto before = exact_mces(g1, g2);
    // Pick an optimal mapping and add an edge on two mapped nodes that are
    // non-adjacent in both graphs.
    bool added = false;
    for (auto [a, x] : before.mapping) {
      for (auto [b, y] : before.mapping) {
        if (a >= b || g1.has_edge(a, b) || g2.has_edge(x, y)) continue;
        std::vector<Edge> e1(g1.edges().begin(), g1.edges().end());
        std::vector<Edge> e2(g2.edges().begin(), g2.edges().end());
        e1.push_back({a, b, "e9"});
        e2.push_back({x, y, "e9"});
        const LabeledGraph h1(g1.node_labels(), e1), h2(g2.node_labels(), e2);
        EXPECT_GE(exact_mces(h1, h2).size, before.size);
        added = true;
        break;
      }
      if (added) break;
    }
  }
}

TEST(Verify, DetectsFaults) {
  const auto g = generate_molecular_like(4, 7, {}, 2.2);
  const auto good = exact_mces(g, g);
  ASSERT_TRUE(verify_common_subgraph(g, g, good));
  ASSERT_GT(good.size, 0);

  // Corrupted edge label: move one g2 edge to an edge of a different label.
  const LabeledGraph relabeled(g.node_labels(), [&] {
    std::vector<Edge> e(g.edges().begin(), g.edges().end());
    e[0].label = "corrupt";
    return e;
  }());
  EXPECT_FALSE(verify_common_subgraph(g, relabeled, good));

  auto bad = good;
  bad.size += 1;
  EXPECT_FALSE(verify_common_subgraph(g, g, bad));

  bad = good;
  bad.edges_g2.back() = bad.edges_g2.front();
  EXPECT_FALSE(verify_common_subgraph(g, g, bad));

  bad = good;
  if (bad.mapping.size() >= 2) {
    bad.mapping[1].second = bad.mapping[0].second;
    EXPECT_FALSE(verify_common_subgraph(g, g, bad));
  }

  bad = good;
  bad.edges_g1.push_back({0, 99});
  bad.edges_g2.push_back({0, 99});
  bad.size += 1;
  EXPECT_FALSE(verify_common_subgraph(g, g, bad));
}
