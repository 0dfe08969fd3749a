#include "nga/graph_io.h"

#include <limits>
#include <sstream>

#include "nga/error.h"

namespace nga {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw GraphError(GraphErrorKind::kMalformed, "malformed graph: " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
}

int node_index(const json& j) {
  if (!j.is_number_integer()) malformed("edge endpoint is not an integer");
  const auto value = j.get<long long>();
  if (value < 0 || value > std::numeric_limits<int>::max()) {
    throw GraphError(GraphErrorKind::kIndexOutOfRange,
                     "edge endpoint " + std::to_string(value) +
                         " is out of range");
  }
  return static_cast<int>(value);
}

}  // namespace

LabeledGraph graph_from_json(const json& j) {
  if (!j.is_object()) malformed("expected an object");
  if (!j.contains("labels") || !j["labels"].is_array()) {
    malformed("missing \"labels\" array");
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    malformed("missing \"edges\" array");
  }
  std::vector<std::string> labels;
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) malformed("node label is not a string");
    labels.push_back(l.get<std::string>());
  }
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3) malformed("edge is not a [u, v, label] triple");
    if (!e[2].is_string()) malformed("edge label is not a string");
    edges.push_back({node_index(e[0]), node_index(e[1]), e[2].get<std::string>()});
  }
  return LabeledGraph(std::move(labels), std::move(edges));
}

nlohmann::ordered_json graph_to_json(const LabeledGraph& g) {
  nlohmann::ordered_json out;
  out["labels"] = nlohmann::ordered_json::array();
  for (const auto& l : g.node_labels()) out["labels"].push_back(l);
  out["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    out["edges"].push_back(nlohmann::ordered_json::array({e.u, e.v, e.label}));
  }
  return out;
}

LabeledGraph parse_graph(std::string_view text) {
  return graph_from_json(parse_json(text));
}

std::string serialize_graph(const LabeledGraph& g) {
  return graph_to_json(g).dump();
}

GraphPairInstance parse_pair(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("g1") || !j.contains("g2")) {
    malformed("pair needs \"g1\" and \"g2\"");
  }
  GraphPairInstance pair;
  if (j.contains("id")) {
    if (!j["id"].is_string()) malformed("pair id is not a string");
    pair.id = j["id"].get<std::string>();
  }
  pair.g1 = graph_from_json(j["g1"]);
  pair.g2 = graph_from_json(j["g2"]);
  return pair;
}

std::string serialize_pair(const GraphPairInstance& pair) {
  nlohmann::ordered_json out;
  out["id"] = pair.id;
  out["g1"] = graph_to_json(pair.g1);
  out["g2"] = graph_to_json(pair.g2);
  return out.dump();
}

std::vector<NamedGraph> parse_graph_set(std::string_view jsonl) {
  std::vector<NamedGraph> out;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = parse_json(line);
    if (!j.is_object() || !j.contains("graph")) {
      malformed("graph set line needs \"graph\"");
    }
    NamedGraph g;
    g.id = j.value("id", std::to_string(out.size()));
    g.graph = graph_from_json(j["graph"]);
    out.push_back(std::move(g));
  }
  return out;
}

std::string serialize_graph_set(const std::vector<NamedGraph>& graphs) {
  std::string out;
  for (const auto& g : graphs) {
    nlohmann::ordered_json line;
    line["id"] = g.id;
    line["graph"] = graph_to_json(g.graph);
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace nga
