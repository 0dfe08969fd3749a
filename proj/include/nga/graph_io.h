#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nga/graph.h"

namespace nga {

// Graph JSON:  {"labels": ["C", "O", ...], "edges": [[u, v, "label"], ...]}
// Pair JSON:   {"id": "...", "g1": <graph>, "g2": <graph>}
// Graph sets are JSON lines, one {"id": "...", "graph": <graph>} per line.
//
// Serialization is canonical: keys in the order shown, no whitespace, edges
// sorted with u < v. parse(serialize(g)) == g.

LabeledGraph parse_graph(std::string_view text);
std::string serialize_graph(const LabeledGraph& g);

LabeledGraph graph_from_json(const nlohmann::json& j);
nlohmann::ordered_json graph_to_json(const LabeledGraph& g);

GraphPairInstance parse_pair(std::string_view text);
std::string serialize_pair(const GraphPairInstance& pair);

struct NamedGraph {
  std::string id;
  LabeledGraph graph;
};

std::vector<NamedGraph> parse_graph_set(std::string_view jsonl);
std::string serialize_graph_set(const std::vector<NamedGraph>& graphs);

}  // namespace nga
