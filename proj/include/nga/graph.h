#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nga {

struct Edge {
  int u = 0;
  int v = 0;
  std::string label;

  bool operator==(const Edge&) const = default;
};

// Undirected simple graph with categorical node and edge labels.
//
// The constructor validates (no self-loops, no duplicate pairs, endpoints in
// range) and canonicalizes: every edge is stored with u < v and the edge list
// is sorted lexicographically by (u, v). Instances are immutable afterwards.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(std::vector<std::string> node_labels, std::vector<Edge> edges);

  int node_count() const { return static_cast<int>(node_labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return node_labels_.empty(); }

  const std::vector<std::string>& node_labels() const { return node_labels_; }
  const std::string& node_label(int u) const { return node_labels_[u]; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[index]; }

  // Index into edges() or -1. Order of u, v does not matter.
  int edge_index(int u, int v) const;
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
  // Neighbours of u in increasing order.
  std::span<const int> neighbors(int u) const { return neighbors_[u]; }
  int degree(int u) const { return static_cast<int>(neighbors_[u].size()); }

  bool operator==(const LabeledGraph& other) const {
    return node_labels_ == other.node_labels_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::string> node_labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> incident_;  // edge index per neighbour slot
};

struct GraphPairInstance {
  std::string id;
  LabeledGraph g1;
  LabeledGraph g2;
};

// Labels of a graph pair mapped into one shared integer vocabulary, so label
// compatibility becomes integer equality.
struct InternedLabels {
  std::vector<int> node1;
  std::vector<int> node2;
  std::vector<int> edge1;  // per edge index of g1
  std::vector<int> edge2;  // per edge index of g2
};

InternedLabels intern_labels(const LabeledGraph& g1, const LabeledGraph& g2);

// Relabels node u as perm[u]. perm must be a permutation of [0, n).
LabeledGraph permute_nodes(const LabeledGraph& g, std::span<const int> perm);

}  // namespace nga
