#include "nga/generator.h"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "nga/error.h"
#include "nga/rng.h"

namespace nga {
namespace {

constexpr std::array<const char*, 10> kAtomNames = {
    "C", "N", "O", "S", "Cl", "F", "P", "Br", "I", "B"};
constexpr std::array<const char*, 4> kBondNames = {"single", "double",
                                                   "aromatic", "triple"};

// Label k with probability proportional to 1 / (k + 1)^2.
int skewed_label(Rng& rng, int alphabet) {
  double total = 0.0;
  for (int k = 0; k < alphabet; ++k) total += 1.0 / ((k + 1.0) * (k + 1.0));
  double x = rng.uniform() * total;
  for (int k = 0; k < alphabet; ++k) {
    x -= 1.0 / ((k + 1.0) * (k + 1.0));
    if (x < 0.0) return k;
  }
  return alphabet - 1;
}

std::string node_label(Rng& rng, int alphabet) {
  const int k = skewed_label(rng, alphabet);
  if (k < static_cast<int>(kAtomNames.size())) return kAtomNames[k];
  return "X" + std::to_string(k);
}

std::string edge_label(Rng& rng, int alphabet) {
  const int k = skewed_label(rng, alphabet);
  if (k < static_cast<int>(kBondNames.size())) return kBondNames[k];
  return "bond" + std::to_string(k);
}

void check_alphabet(LabelAlphabet alphabet) {
  if (alphabet.node < 1 || alphabet.edge < 1) {
    throw GraphError(GraphErrorKind::kInvalidArgument,
                     "label alphabets must be non-empty");
  }
}

// Mutable adjacency used while growing a graph.
struct Builder {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> adj;

  explicit Builder(const LabeledGraph& g)
      : labels(g.node_labels()), edges(g.edges().begin(), g.edges().end()) {
    adj.assign(labels.size(), std::vector<bool>(labels.size(), false));
    for (const Edge& e : edges) adj[e.u][e.v] = adj[e.v][e.u] = true;
  }

  int add_node(std::string label) {
    labels.push_back(std::move(label));
    for (auto& row : adj) row.push_back(false);
    adj.emplace_back(labels.size(), false);
    return static_cast<int>(labels.size()) - 1;
  }

  void add_edge(int u, int v, std::string label) {
    adj[u][v] = adj[v][u] = true;
    edges.push_back({u, v, std::move(label)});
  }

  LabeledGraph build() && {
    return LabeledGraph(std::move(labels), std::move(edges));
  }
};

LabeledGraph decorate(Rng& rng, const LabeledGraph& base, int extra,
                      LabelAlphabet alphabet) {
  Builder b(base);
  for (int k = 0; k < extra; ++k) {
    const int existing = static_cast<int>(b.labels.size());
    const int x = b.add_node(node_label(rng, alphabet.node));
    if (existing == 0) continue;
    const int anchor = static_cast<int>(rng.below(existing));
    b.add_edge(anchor, x, edge_label(rng, alphabet.edge));
    if (rng.uniform() < 0.5) {
      std::vector<int> free;
      for (int w = 0; w < existing; ++w)
        if (!b.adj[x][w]) free.push_back(w);
      if (!free.empty()) {
        const int w = free[rng.below(free.size())];
        b.add_edge(w, x, edge_label(rng, alphabet.edge));
      }
    }
  }
  return std::move(b).build();
}

}  // namespace

LabeledGraph generate_molecular_like(std::uint64_t seed, int n,
                                     LabelAlphabet alphabet,
                                     double avg_degree) {
  if (n < 1) {
    throw GraphError(GraphErrorKind::kInvalidArgument, "n must be >= 1");
  }
  if (!(avg_degree >= 0.0) || avg_degree > n - 1) {
    throw GraphError(GraphErrorKind::kInvalidArgument,
                     "avg_degree must lie in [0, n - 1]");
  }
  check_alphabet(alphabet);
  Rng rng(seed);

  std::vector<std::string> labels;
  labels.reserve(n);
  for (int u = 0; u < n; ++u) labels.push_back(node_label(rng, alphabet.node));
  Builder b(LabeledGraph(std::move(labels), {}));

  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng.below(v));
    b.add_edge(u, v, edge_label(rng, alphabet.edge));
  }

  const double target = n * avg_degree / 2.0;
  long long wanted = static_cast<long long>(std::floor(target));
  if (rng.uniform() < target - std::floor(target)) ++wanted;
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  wanted = std::min(std::max<long long>(wanted, n - 1), max_edges);

  const long long missing = wanted - (n - 1);
  if (missing > 0) {
    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!b.adj[u][v]) candidates.emplace_back(u, v);
    // Partial Fisher-Yates: the first `missing` slots become the sample.
    for (long long k = 0; k < missing; ++k) {
      const auto j = k + static_cast<long long>(rng.below(candidates.size() - k));
      std::swap(candidates[k], candidates[j]);
      b.add_edge(candidates[k].first, candidates[k].second,
                 edge_label(rng, alphabet.edge));
    }
  }
  return std::move(b).build();
}

GraphPairInstance perturb_subgraph_pair(std::uint64_t seed,
                                        const LabeledGraph& base,
                                        int extra_per_side,
                                        LabelAlphabet alphabet) {
  if (base.empty()) {
    throw GraphError(GraphErrorKind::kInvalidArgument, "base graph is empty");
  }
  if (extra_per_side < 0) {
    throw GraphError(GraphErrorKind::kInvalidArgument,
                     "extra_per_side must be >= 0");
  }
  check_alphabet(alphabet);
  Rng rng(seed);
  Rng left = rng.split(1);
  Rng right = rng.split(2);
  GraphPairInstance pair;
  pair.id = "planted-" + std::to_string(seed);
  pair.g1 = decorate(left, base, extra_per_side, alphabet);
  pair.g2 = decorate(right, base, extra_per_side, alphabet);
  return pair;
}

LabeledGraph shuffle_nodes(std::uint64_t seed, const LabeledGraph& g) {
  Rng rng(seed);
  std::vector<int> perm(g.node_count());
  for (int u = 0; u < g.node_count(); ++u) perm[u] = u;
  for (int k = g.node_count() - 1; k > 0; --k) {
    std::swap(perm[k], perm[rng.below(k + 1)]);
  }
  return permute_nodes(g, perm);
}

std::vector<GraphPairInstance> generate_battery(std::uint64_t seed, int count,
                                                int n_min, int n_max,
                                                LabelAlphabet alphabet,
                                                double avg_degree) {
  if (n_min < 3 || n_max < n_min) {
    throw GraphError(GraphErrorKind::kInvalidArgument,
                     "battery needs 3 <= n_min <= n_max");
  }
  std::vector<GraphPairInstance> out;
  out.reserve(count);
  const Rng root(seed);
  for (int k = 0; k < count; ++k) {
    Rng rng = root.split(static_cast<std::uint64_t>(k));
    auto draw_n = [&](int lo) {
      return lo + static_cast<int>(rng.below(n_max - lo + 1));
    };
    auto degree_for = [&](int n) { return std::min(avg_degree, n - 1.0); };
    GraphPairInstance pair;
    if (k % 2 == 0) {
      const int n1 = draw_n(n_min);
      const int n2 = draw_n(n_min);
      pair.g1 = generate_molecular_like(rng.next_u64(), n1, alphabet,
                                        degree_for(n1));
      pair.g2 = generate_molecular_like(rng.next_u64(), n2, alphabet,
                                        degree_for(n2));
    } else {
      const int extra = 1 + static_cast<int>(rng.below(2));
      const int n_total = draw_n(std::max(n_min, extra + 2));
      const int n_base = n_total - extra;
      const LabeledGraph base = generate_molecular_like(
          rng.next_u64(), n_base, alphabet, degree_for(n_base));
      GraphPairInstance planted =
          perturb_subgraph_pair(rng.next_u64(), base, extra, alphabet);
      pair.g1 = std::move(planted.g1);
      pair.g2 = shuffle_nodes(rng.next_u64(), planted.g2);
    }
    pair.id = "pair-" + std::to_string(k);
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace nga
