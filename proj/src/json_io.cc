#include "nga/json_io.h"

#include "nga/error.h"

namespace nga {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
  ordered_json out = ordered_json::array();
  for (auto [a, b] : pairs) out.push_back(ordered_json::array({a, b}));
  return out;
}

std::vector<std::pair<int, int>> pairs_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw InvalidArgument(std::string("result needs a \"") + key + "\" array");
  }
  std::vector<std::pair<int, int>> out;
  for (const auto& p : j[key]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw InvalidArgument(std::string("\"") + key + "\" entries must be [int, int]");
    }
    out.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return out;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument("config: \"" + key + "\" has the wrong type");
  }
}

}  // namespace

ordered_json result_to_json(const CommonSubgraphResult& r) {
  ordered_json out;
  out["mapping"] = pairs_to_json(r.mapping);
  out["edges_g1"] = pairs_to_json(r.edges_g1);
  out["edges_g2"] = pairs_to_json(r.edges_g2);
  out["size"] = r.size;
  out["objective"] = r.objective;
  return out;
}

CommonSubgraphResult result_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("result must be an object");
  CommonSubgraphResult r;
  r.mapping = pairs_from_json(j, "mapping");
  r.edges_g1 = pairs_from_json(j, "edges_g1");
  r.edges_g2 = pairs_from_json(j, "edges_g2");
  if (!j.contains("size") || !j["size"].is_number_integer()) {
    throw InvalidArgument("result needs an integer \"size\"");
  }
  r.size = j["size"].get<int>();
  if (j.contains("objective")) {
    if (!j["objective"].is_number()) throw InvalidArgument("\"objective\" must be a number");
    r.objective = j["objective"].get<double>();
  }
  return r;
}

CommonSubgraphResult parse_result(std::string_view text) {
  try {
    return result_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed result JSON: ") + e.what());
  }
}

ordered_json config_to_json(const SolverConfig& cfg) {
  ordered_json out;
  out["m"] = cfg.m;
  out["d"] = cfg.d;
  out["sinkhorn_iters"] = cfg.sinkhorn_iters;
  out["gumbel_samples"] = cfg.gumbel_samples;
  out["learning_rate"] = cfg.learning_rate;
  out["epochs"] = cfg.epochs;
  if (cfg.time_budget_s) {
    out["time_budget_s"] = *cfg.time_budget_s;
  } else {
    out["time_budget_s"] = nullptr;
  }
  out["seed"] = cfg.seed;
  out["variant"] = std::string(variant_name(cfg.variant));
  out["init"] = std::string(init_name(cfg.init));
  out["init_std"] = cfg.init_std;
  out["exp_clamp"] = cfg.exp_clamp;
  out["gumbel_scale"] = cfg.gumbel_scale;
  out["mask_incompatible"] = cfg.mask_incompatible;
  out["manual_beta_start"] = cfg.manual_beta_start;
  out["manual_beta_end"] = cfg.manual_beta_end;
  ordered_json ga;
  ga["beta0"] = cfg.ga.beta0;
  ga["growth"] = cfg.ga.growth;
  ga["max_iters"] = cfg.ga.max_iters;
  ga["inner_iters"] = cfg.ga.inner_iters;
  ga["gamma"] = cfg.ga.gamma;
  ga["tol"] = cfg.ga.tol;
  out["ga"] = ga;
  return out;
}

SolverConfig config_from_json(const json& j, SolverConfig cfg) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "m") cfg.m = get_as<int>(j, key);
    else if (key == "d") cfg.d = get_as<int>(j, key);
    else if (key == "sinkhorn_iters") cfg.sinkhorn_iters = get_as<int>(j, key);
    else if (key == "gumbel_samples") cfg.gumbel_samples = get_as<int>(j, key);
    else if (key == "learning_rate") cfg.learning_rate = get_as<double>(j, key);
    else if (key == "epochs") cfg.epochs = get_as<int>(j, key);
    else if (key == "time_budget_s") {
      if (value.is_null()) cfg.time_budget_s.reset();
      else cfg.time_budget_s = get_as<double>(j, key);
    }
    else if (key == "seed") cfg.seed = get_as<std::uint64_t>(j, key);
    else if (key == "variant") cfg.variant = parse_variant(get_as<std::string>(j, key));
    else if (key == "init") cfg.init = parse_init(get_as<std::string>(j, key));
    else if (key == "init_std") cfg.init_std = get_as<double>(j, key);
    else if (key == "exp_clamp") cfg.exp_clamp = get_as<double>(j, key);
    else if (key == "gumbel_scale") cfg.gumbel_scale = get_as<double>(j, key);
    else if (key == "mask_incompatible") cfg.mask_incompatible = get_as<bool>(j, key);
    else if (key == "manual_beta_start") cfg.manual_beta_start = get_as<double>(j, key);
    else if (key == "manual_beta_end") cfg.manual_beta_end = get_as<double>(j, key);
    else if (key == "ga") {
      if (!value.is_object()) throw InvalidArgument("config: \"ga\" must be an object");
      for (const auto& [k, v] : value.items()) {
        if (k == "beta0") cfg.ga.beta0 = get_as<double>(value, k);
        else if (k == "growth") cfg.ga.growth = get_as<double>(value, k);
        else if (k == "max_iters") cfg.ga.max_iters = get_as<int>(value, k);
        else if (k == "inner_iters") cfg.ga.inner_iters = get_as<int>(value, k);
        else if (k == "gamma") cfg.ga.gamma = get_as<double>(value, k);
        else if (k == "tol") cfg.ga.tol = get_as<double>(value, k);
        else throw InvalidArgument("config: unknown key \"ga." + k + "\"");
      }
    }
    else throw InvalidArgument("config: unknown key \"" + key + "\"");
  }
  return cfg;
}

SolverConfig parse_config(std::string_view text, SolverConfig base) {
  try {
    return config_from_json(json::parse(text), base);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed config JSON: ") + e.what());
  }
}

std::string history_line(const HistoryEntry& e) {
  ordered_json out;
  out["epoch"] = e.epoch;
  out["loss"] = e.loss;
  out["best_loss"] = e.best_loss;
  out["best_objective"] = e.best_objective;
  out["wall_ms"] = e.wall_ms;
  out["clamped"] = e.clamped;
  out["betas"] = e.betas;
  return out.dump();
}

}  // namespace nga
