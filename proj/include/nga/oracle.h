#pragma once

#include "nga/acg.h"
#include "nga/graph.h"

namespace nga {

struct OracleBudget {
  int max_nodes = 10;          // cap on min(n1, n2)
  double time_limit_ms = 0.0;  // 0 = unlimited
  bool force = false;          // ignore max_nodes
};

// Provably optimal MCES by branch and bound. G1 nodes are decided in order
// of descending degree; each maps to an unused label-compatible G2 node or
// stays unmapped. Bound: matched edges plus, per edge label, the smaller of
// the G1 edges that still have an undecided endpoint and the G2 edges that
// still have an unused endpoint. Throws BudgetExceeded when the instance is
// above the cap or the time limit runs out.
CommonSubgraphResult exact_mces(const LabeledGraph& g1, const LabeledGraph& g2,
                                const OracleBudget& budget = {});

// Second exact method: every injective total map from the smaller graph into
// the larger one, counting edges whose endpoints and labels agree. Factorial;
// meant for n <= 8. Same budget semantics.
CommonSubgraphResult exhaustive_mces(const LabeledGraph& g1, const LabeledGraph& g2,
                                     const OracleBudget& budget = {});

// True iff the mapping is injective and label-preserving, and the matched
// edge lists are duplicate-free, exist in their graphs, carry equal labels
// and correspond under the mapping. size must equal the list length.
bool verify_common_subgraph(const LabeledGraph& g1, const LabeledGraph& g2,
                            const CommonSubgraphResult& result);

}  // namespace nga
