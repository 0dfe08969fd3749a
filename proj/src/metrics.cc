#include "nga/metrics.h"

#include <algorithm>
#include <cmath>

#include "nga/error.h"

namespace nga {

std::optional<double> accuracy(const CommonSubgraphResult& pred,
                               const CommonSubgraphResult& exact) {
  if (exact.size == 0) return std::nullopt;
  return static_cast<double>(pred.size) / exact.size;
}

double johnson_similarity(const LabeledGraph& g1, const LabeledGraph& g2,
                          const CommonSubgraphResult& g12) {
  if (g1.empty() || g2.empty()) throw InvalidArgument("johnson_similarity needs non-empty graphs");
  std::set<int> nodes;
  for (auto [a, b] : g12.edges_g1) {
    nodes.insert(a);
    nodes.insert(b);
  }
  const double common = static_cast<double>(nodes.size()) + g12.size;
  const double s1 = g1.node_count() + g1.edge_count();
  const double s2 = g2.node_count() + g2.edge_count();
  return common * common / (s1 * s2);
}

double rmse(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) throw InvalidArgument("rmse: length mismatch");
  if (pred.empty()) throw InvalidArgument("rmse: empty input");
  double sum = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) sum += (pred[k] - truth[k]) * (pred[k] - truth[k]);
  return std::sqrt(sum / static_cast<double>(pred.size()));
}

namespace {

void sort_scored(std::vector<RankedEntry>& scored) {
  std::sort(scored.begin(), scored.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.target < b.target;
  });
}

}  // namespace

RankedList rank_targets(std::string query, std::vector<RankedEntry> scored) {
  sort_scored(scored);
  return {std::move(query), std::move(scored)};
}

std::set<std::string> top_k_targets(std::vector<RankedEntry> scored, int k) {
  sort_scored(scored);
  std::set<std::string> out;
  for (int i = 0; i < k && i < static_cast<int>(scored.size()); ++i) out.insert(scored[i].target);
  return out;
}

RetrievalMetrics retrieval_metrics(
    const std::vector<RankedList>& rankings,
    const std::map<std::string, std::set<std::string>>& relevant) {
  if (rankings.empty()) throw InvalidArgument("retrieval_metrics: no rankings");
  RetrievalMetrics out;
  for (const RankedList& list : rankings) {
    if (list.entries.empty()) throw InvalidArgument("retrieval_metrics: empty ranking for " + list.query);
    auto it = relevant.find(list.query);
    if (it == relevant.end() || it->second.empty()) {
      throw InvalidArgument("retrieval_metrics: no relevant targets for " + list.query);
    }
    const auto& rel = it->second;
    double rr = 0.0, ap = 0.0;
    int hits = 0, hits_at_10 = 0;
    for (std::size_t r = 0; r < list.entries.size(); ++r) {
      if (!rel.count(list.entries[r].target)) continue;
      ++hits;
      if (rr == 0.0) rr = 1.0 / static_cast<double>(r + 1);
      if (r < 10) ++hits_at_10;
      ap += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
    out.mrr += rr;
    out.p_at_10 += hits_at_10 / 10.0;
    out.map += ap / static_cast<double>(rel.size());
  }
  const double q = static_cast<double>(rankings.size());
  out.mrr /= q;
  out.p_at_10 /= q;
  out.map /= q;
  return out;
}

}  // namespace nga
