#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "nga/acg.h"
#include "nga/nga.h"

namespace nga {

// {"mapping":[[u,v],...],"edges_g1":[[a,b],...],"edges_g2":[[c,d],...],
//  "size":k,"objective":x}
nlohmann::ordered_json result_to_json(const CommonSubgraphResult& r);
CommonSubgraphResult result_from_json(const nlohmann::json& j);
CommonSubgraphResult parse_result(std::string_view text);

// Keys mirror the SolverConfig field names; GA settings live under "ga".
// Unknown keys and wrong types throw InvalidArgument.
nlohmann::ordered_json config_to_json(const SolverConfig& cfg);
SolverConfig config_from_json(const nlohmann::json& j, SolverConfig base = {});
SolverConfig parse_config(std::string_view text, SolverConfig base = {});

// One JSON line (no trailing newline).
std::string history_line(const HistoryEntry& entry);

}  // namespace nga
