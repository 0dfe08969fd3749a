#include "nga/oracle.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>

#include "nga/error.h"

namespace nga {
namespace {

using Clock = std::chrono::steady_clock;

void check_budget(const LabeledGraph& g1, const LabeledGraph& g2, const OracleBudget& budget) {
  const int small = std::min(g1.node_count(), g2.node_count());
  if (!budget.force && small > budget.max_nodes) {
    throw BudgetExceeded("instance has " + std::to_string(small) +
                         " nodes on its smaller side; oracle cap is " +
                         std::to_string(budget.max_nodes));
  }
}

class Deadline {
 public:
  explicit Deadline(double limit_ms) : limit_ms_(limit_ms), start_(Clock::now()) {}
  void poll() {
    if (limit_ms_ <= 0.0 || (++calls_ & 1023) != 0) return;
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    if (ms > limit_ms_) throw BudgetExceeded("oracle time limit exceeded");
  }

 private:
  double limit_ms_;
  Clock::time_point start_;
  unsigned long calls_ = 0;
};

CommonSubgraphResult result_from_map(const LabeledGraph& g1, const LabeledGraph& g2,
                                     const std::vector<int>& map) {
  const AssociationCommonGraph acg = build_acg(g1, g2);
  HardAssignment p;
  p.cols = g2.node_count();
  p.col.assign(g1.node_count(), HardAssignment::kUnassigned);
  for (int u = 0; u < g1.node_count(); ++u)
    if (map[u] >= 0 && acg.node_at(u, map[u]) >= 0) p.col[u] = map[u];
  return decode_common_subgraph(acg, p);
}

class BranchAndBound {
 public:
  BranchAndBound(const LabeledGraph& g1, const LabeledGraph& g2, double limit_ms)
      : g1_(g1), g2_(g2), ids_(intern_labels(g1, g2)), deadline_(limit_ms) {
    n1_ = g1.node_count();
    n2_ = g2.node_count();
    order_.resize(n1_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return g1.degree(a) > g1.degree(b); });
    int labels = 0;
    for (int l : ids_.edge1) labels = std::max(labels, l + 1);
    for (int l : ids_.edge2) labels = std::max(labels, l + 1);
    label_count_ = labels;
    map_.assign(n1_, kUndecided);
    used_.assign(n2_, 0);
    best_map_.assign(n1_, -1);
  }

  std::vector<int> run() {
    search(0, 0);
    return best_map_;
  }

 private:
  static constexpr int kUndecided = -2;
  static constexpr int kUnmapped = -1;

  int bound(int matched) const {
    std::vector<int> future1(label_count_, 0), open2(label_count_, 0);
    for (int e = 0; e < g1_.edge_count(); ++e) {
      const Edge& x = g1_.edge(e);
      if (map_[x.u] == kUndecided || map_[x.v] == kUndecided) ++future1[ids_.edge1[e]];
    }
    for (int e = 0; e < g2_.edge_count(); ++e) {
      const Edge& y = g2_.edge(e);
      if (!used_[y.u] || !used_[y.v]) ++open2[ids_.edge2[e]];
    }
    int total = matched;
    for (int l = 0; l < label_count_; ++l) total += std::min(future1[l], open2[l]);
    return total;
  }

  // Edges gained by mapping u -> v given the decided neighbours of u.
  int gain(int u, int v) const {
    int count = 0;
    const auto nb = g1_.neighbors(u);
    for (int w : nb) {
      const int x = map_[w];
      if (x < 0) continue;
      const int e2 = g2_.edge_index(v, x);
      if (e2 < 0) continue;
      if (ids_.edge1[g1_.edge_index(u, w)] == ids_.edge2[e2]) ++count;
    }
    return count;
  }

  void search(int depth, int matched) {
    deadline_.poll();
    if (matched > best_) {
      best_ = matched;
      for (int u = 0; u < n1_; ++u) best_map_[u] = map_[u] >= 0 ? map_[u] : -1;
    }
    if (depth == n1_) return;
    if (bound(matched) <= best_) return;
    const int u = order_[depth];
    for (int v = 0; v < n2_; ++v) {
      if (used_[v] || ids_.node1[u] != ids_.node2[v]) continue;
      const int g = gain(u, v);
      map_[u] = v;
      used_[v] = 1;
      search(depth + 1, matched + g);
      used_[v] = 0;
      map_[u] = kUndecided;
    }
    map_[u] = kUnmapped;
    search(depth + 1, matched);
    map_[u] = kUndecided;
  }

  const LabeledGraph& g1_;
  const LabeledGraph& g2_;
  InternedLabels ids_;
  Deadline deadline_;
  int n1_ = 0, n2_ = 0, label_count_ = 0;
  std::vector<int> order_, map_, best_map_;
  std::vector<char> used_;
  int best_ = -1;
};

}  // namespace

CommonSubgraphResult exact_mces(const LabeledGraph& g1, const LabeledGraph& g2,
                                const OracleBudget& budget) {
  check_budget(g1, g2, budget);
  BranchAndBound bnb(g1, g2, budget.time_limit_ms);
  return result_from_map(g1, g2, bnb.run());
}

CommonSubgraphResult exhaustive_mces(const LabeledGraph& g1, const LabeledGraph& g2,
                                     const OracleBudget& budget) {
  check_budget(g1, g2, budget);
  const bool swap = g1.node_count() > g2.node_count();
  const LabeledGraph& a = swap ? g2 : g1;
  const LabeledGraph& b = swap ? g1 : g2;
  const InternedLabels ids = intern_labels(a, b);
  Deadline deadline(budget.time_limit_ms);

  const int na = a.node_count();
  const int nb = b.node_count();
  std::vector<int> map(na, -1), best_map(na, -1);
  std::vector<char> used(nb, 0);
  int best = -1;

  auto score = [&] {
    int count = 0;
    for (int e = 0; e < a.edge_count(); ++e) {
      const Edge& x = a.edge(e);
      const int c = map[x.u], d = map[x.v];
      if (ids.node1[x.u] != ids.node2[c] || ids.node1[x.v] != ids.node2[d]) continue;
      const int e2 = b.edge_index(c, d);
      if (e2 >= 0 && ids.edge1[e] == ids.edge2[e2]) ++count;
    }
    return count;
  };
  auto recurse = [&](auto&& self, int u) -> void {
    if (u == na) {
      deadline.poll();
      const int s = score();
      if (s > best) {
        best = s;
        best_map = map;
      }
      return;
    }
    for (int v = 0; v < nb; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      map[u] = v;
      self(self, u + 1);
      used[v] = 0;
    }
  };
  recurse(recurse, 0);

  // Keep only label-compatible pairs; the rest never carry an edge.
  std::vector<int> g1_map(g1.node_count(), -1);
  for (int u = 0; u < na; ++u) {
    const int v = best_map[u];
    if (v < 0 || ids.node1[u] != ids.node2[v]) continue;
    if (swap) {
      g1_map[v] = u;
    } else {
      g1_map[u] = v;
    }
  }
  return result_from_map(g1, g2, g1_map);
}

bool verify_common_subgraph(const LabeledGraph& g1, const LabeledGraph& g2,
                            const CommonSubgraphResult& result) {
  std::map<int, int> forward;
  std::set<int> images;
  for (auto [u, v] : result.mapping) {
    if (u < 0 || u >= g1.node_count() || v < 0 || v >= g2.node_count()) return false;
    if (!forward.emplace(u, v).second || !images.insert(v).second) return false;
    if (g1.node_label(u) != g2.node_label(v)) return false;
  }
  if (result.edges_g1.size() != result.edges_g2.size()) return false;
  if (result.size != static_cast<int>(result.edges_g1.size())) return false;

  std::set<std::pair<int, int>> seen1, seen2;
  for (std::size_t k = 0; k < result.edges_g1.size(); ++k) {
    auto [a, b] = result.edges_g1[k];
    auto [c, d] = result.edges_g2[k];
    if (a < 0 || b < 0 || a >= g1.node_count() || b >= g1.node_count()) return false;
    if (c < 0 || d < 0 || c >= g2.node_count() || d >= g2.node_count()) return false;
    const int e1 = g1.edge_index(a, b);
    const int e2 = g2.edge_index(c, d);
    if (e1 < 0 || e2 < 0) return false;
    if (g1.edge(e1).label != g2.edge(e2).label) return false;
    auto fa = forward.find(a), fb = forward.find(b);
    if (fa == forward.end() || fb == forward.end()) return false;
    if (fa->second != c || fb->second != d) return false;
    if (!seen1.insert(std::minmax(a, b)).second) return false;
    if (!seen2.insert(std::minmax(c, d)).second) return false;
  }
  return true;
}

}  // namespace nga
