#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nga/acg.h"
#include "nga/graph.h"

namespace nga {

// pred.size / exact.size, or nullopt when exact.size == 0 (undefined ratio;
// callers exclude it from means).
std::optional<double> accuracy(const CommonSubgraphResult& pred,
                               const CommonSubgraphResult& exact);

// (|V12| + |E12|)^2 / ((|V1| + |E1|)(|V2| + |E2|)), where |V12| counts the
// G1 nodes incident to matched edges. Throws InvalidArgument on an empty
// graph.
double johnson_similarity(const LabeledGraph& g1, const LabeledGraph& g2,
                          const CommonSubgraphResult& g12);

// Throws InvalidArgument on empty input or a length mismatch.
double rmse(std::span<const double> pred, std::span<const double> truth);

struct RankedEntry {
  std::string target;
  double score = 0.0;
};

struct RankedList {
  std::string query;
  std::vector<RankedEntry> entries;  // score descending, target id ascending on ties
};

// Sorts (target, score) pairs into a RankedList.
RankedList rank_targets(std::string query, std::vector<RankedEntry> scored);

// The k highest-scoring targets, ties broken by smaller id.
std::set<std::string> top_k_targets(std::vector<RankedEntry> scored, int k = 10);

struct RetrievalMetrics {
  double mrr = 0.0;
  double p_at_10 = 0.0;
  double map = 0.0;
};

// Means over queries. MRR uses the rank of the first relevant target, P@10
// counts relevant targets among the first ten, and average precision averages
// the precision at each relevant hit over all relevant targets. Throws
// InvalidArgument for an empty ranking set, an empty list, or a query without
// relevant targets.
RetrievalMetrics retrieval_metrics(
    const std::vector<RankedList>& rankings,
    const std::map<std::string, std::set<std::string>>& relevant);

}  // namespace nga
