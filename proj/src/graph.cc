#include "nga/graph.h"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "nga/error.h"

namespace nga {

LabeledGraph::LabeledGraph(std::vector<std::string> node_labels,
                           std::vector<Edge> edges)
    : node_labels_(std::move(node_labels)), edges_(std::move(edges)) {
  const int n = node_count();
  for (Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw GraphError(GraphErrorKind::kIndexOutOfRange,
                       "edge (" + std::to_string(e.u) + ", " +
                           std::to_string(e.v) + ") references a node outside [0, " +
                           std::to_string(n) + ")");
    }
    if (e.u == e.v) {
      throw GraphError(GraphErrorKind::kSelfLoop,
                       "self-loop on node " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
      throw GraphError(GraphErrorKind::kDuplicateEdge,
                       "duplicate edge (" + std::to_string(edges_[k].u) +
                           ", " + std::to_string(edges_[k].v) + ")");
    }
  }

  neighbors_.assign(n, {});
  incident_.assign(n, {});
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int k = 0; k < edge_count(); ++k) {
    adj[edges_[k].u].emplace_back(edges_[k].v, k);
    adj[edges_[k].v].emplace_back(edges_[k].u, k);
  }
  for (int u = 0; u < n; ++u) {
    std::sort(adj[u].begin(), adj[u].end());
    for (auto [w, k] : adj[u]) {
      neighbors_[u].push_back(w);
      incident_[u].push_back(k);
    }
  }
}

int LabeledGraph::edge_index(int u, int v) const {
  if (u < 0 || v < 0 || u >= node_count() || v >= node_count()) return -1;
  const auto& nb = neighbors_[u];
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return -1;
  return incident_[u][it - nb.begin()];
}

InternedLabels intern_labels(const LabeledGraph& g1, const LabeledGraph& g2) {
  // Node and edge labels live in separate vocabularies.
  std::unordered_map<std::string, int> node_ids;
  std::unordered_map<std::string, int> edge_ids;
  auto id_of = [](std::unordered_map<std::string, int>& ids,
                  const std::string& s) {
    auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
    return it->second;
  };
  InternedLabels out;
  for (const auto& s : g1.node_labels()) out.node1.push_back(id_of(node_ids, s));
  for (const auto& s : g2.node_labels()) out.node2.push_back(id_of(node_ids, s));
  for (const auto& e : g1.edges()) out.edge1.push_back(id_of(edge_ids, e.label));
  for (const auto& e : g2.edges()) out.edge2.push_back(id_of(edge_ids, e.label));
  return out;
}

LabeledGraph permute_nodes(const LabeledGraph& g, std::span<const int> perm) {
  const int n = g.node_count();
  if (static_cast<int>(perm.size()) != n) {
    throw InvalidArgument("permutation length differs from node count");
  }
  std::vector<std::string> labels(n);
  std::vector<bool> seen(n, false);
  for (int u = 0; u < n; ++u) {
    if (perm[u] < 0 || perm[u] >= n || seen[perm[u]]) {
      throw InvalidArgument("not a permutation");
    }
    seen[perm[u]] = true;
    labels[perm[u]] = g.node_label(u);
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.label});
  return LabeledGraph(std::move(labels), std::move(edges));
}

}  // namespace nga
