#include "nga/nga.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "nga/assign.h"
#include "nga/error.h"
#include "nga/rng.h"
#include "nga/tape.h"

namespace nga {

namespace {

constexpr std::pair<Variant, std::string_view> kVariantNames[] = {
    {Variant::kProduct, "product"},
    {Variant::kScalar, "scalar"},
    {Variant::kPositive, "positive"},
    {Variant::kManualSchedule, "manual_schedule"},
    {Variant::kClassicGa, "classic_ga"},
    {Variant::kGaGumbel, "ga_gumbel"},
};

bool uses_weights(Variant v) { return v == Variant::kProduct || v == Variant::kPositive; }
bool is_ga(Variant v) { return v == Variant::kClassicGa || v == Variant::kGaGumbel; }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::string_view variant_name(Variant v) {
  for (auto [value, name] : kVariantNames)
    if (value == v) return name;
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (auto [value, n] : kVariantNames)
    if (n == name) return value;
  throw InvalidArgument("unknown variant '" + std::string(name) + "'");
}

std::string_view init_name(InitMode m) { return m == InitMode::kUniform ? "uniform" : "random"; }

InitMode parse_init(std::string_view name) {
  if (name == "uniform") return InitMode::kUniform;
  if (name == "random") return InitMode::kRandom;
  throw InvalidArgument("unknown init '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("config: " + what); };
  if (m < 0) fail("m must be >= 0");
  if (d < 1) fail("d must be >= 1");
  if (sinkhorn_iters < 1) fail("sinkhorn_iters must be >= 1");
  if (gumbel_samples < 0) fail("gumbel_samples must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be positive");
  if (time_budget_s) {
    if (!(*time_budget_s > 0.0) || !std::isfinite(*time_budget_s)) {
      fail("time_budget_s must be positive");
    }
  } else if (epochs < 1) {
    fail("epochs must be >= 1");
  }
  if (!(init_std >= 0.0)) fail("init_std must be >= 0");
  if (!std::isfinite(exp_clamp)) fail("exp_clamp must be finite");
  if (!(gumbel_scale >= 0.0)) fail("gumbel_scale must be >= 0");
  if (is_ga(variant)) {
    if (!(ga.beta0 > 0.0)) fail("ga.beta0 must be positive");
    if (!(ga.growth > 1.0)) fail("ga.growth must exceed 1");
    if (ga.max_iters < 1 || ga.inner_iters < 1) fail("ga iteration counts must be positive");
  }
}

NgaParams NgaParams::initialize(const SolverConfig& cfg, int n1, int n2) {
  NgaParams p;
  p.variant = cfg.variant;
  p.m = cfg.m;
  p.d = cfg.d;
  Rng rng(derive_seed(cfg.seed, 0));
  if (uses_weights(cfg.variant) || cfg.variant == Variant::kScalar) {
    const std::size_t len = static_cast<std::size_t>(cfg.m) * cfg.d;
    p.w1.resize(len);
    p.w2.resize(len);
    for (double& w : p.w1) w = cfg.init_std * rng.normal();
    for (double& w : p.w2) w = cfg.init_std * rng.normal();
    if (cfg.variant == Variant::kScalar) {
      p.theta.resize(cfg.m);
      for (int l = 0; l < cfg.m; ++l) {
        double b = 0.0;
        for (int k = 0; k < cfg.d; ++k) b += p.w1[l * cfg.d + k] * p.w2[l * cfg.d + k];
        p.theta[l] = b;
      }
      p.w1.clear();
      p.w2.clear();
    }
  }
  if (cfg.init == InitMode::kRandom) {
    Rng lr = rng.split(1);
    p.logits.resize(static_cast<std::size_t>(n1) * n2);
    for (double& x : p.logits) x = lr.normal();
  }
  p.manual_beta_start = cfg.manual_beta_start;
  p.manual_beta_end = cfg.manual_beta_end;
  return p;
}

double NgaParams::beta(int layer) const {
  auto inner = [&] {
    double b = 0.0;
    for (int k = 0; k < d; ++k) b += w1[layer * d + k] * w2[layer * d + k];
    return b;
  };
  switch (variant) {
    case Variant::kProduct:
      return inner();
    case Variant::kPositive:
      return sigmoid(inner());
    case Variant::kScalar:
      return theta[layer];
    case Variant::kManualSchedule:
      if (m == 1) return manual_beta_end;
      return manual_beta_start + (manual_beta_end - manual_beta_start) * layer / (m - 1);
    default:
      return 0.0;
  }
}

std::vector<double> NgaParams::betas() const {
  std::vector<double> out;
  if (is_ga(variant)) return out;
  for (int l = 0; l < m; ++l) out.push_back(beta(l));
  return out;
}

std::size_t NgaParams::trainable_count() const {
  return w1.size() + w2.size() + theta.size() + logits.size();
}

std::vector<double> NgaParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(trainable_count());
  for (const auto* part : {&w1, &w2, &theta, &logits})
    flat.insert(flat.end(), part->begin(), part->end());
  return flat;
}

void NgaParams::assign_flat(std::span<const double> flat) {
  if (flat.size() != trainable_count()) throw InvalidArgument("parameter length mismatch");
  std::size_t at = 0;
  for (auto* part : {&w1, &w2, &theta, &logits})
    for (double& x : *part) x = flat[at++];
}

void AdamState::update(std::vector<double>& x, std::span<const double> grad, double lr) {
  if (grad.size() != x.size()) throw InvalidArgument("adam: gradient length mismatch");
  if (m.empty()) {
    m.assign(x.size(), 0.0);
    v.assign(x.size(), 0.0);
  }
  ++step;
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
  for (std::size_t k = 0; k < x.size(); ++k) {
    m[k] = beta1 * m[k] + (1.0 - beta1) * grad[k];
    v[k] = beta2 * v[k] + (1.0 - beta2) * grad[k] * grad[k];
    x[k] -= lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps);
  }
}

namespace {

struct Recording {
  Tape tape;
  Tape::Id out = -1;
  std::vector<Tape::Id> layer_ids;
  std::vector<Tape::Id> w1_ids, w2_ids, theta_ids;
  Tape::Id logits_id = -1;
  bool clamped = false;
};

void check_finite(const std::vector<double>& x, int layer) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw NumericalError(layer, "non-finite assignment after layer " + std::to_string(layer) +
                                      " (temperature blow-up)");
    }
  }
}

std::vector<double> slice(const std::vector<double>& x, int layer, int d) {
  return std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(layer) * d,
                             x.begin() + static_cast<std::ptrdiff_t>(layer + 1) * d);
}

void record(Recording& rec, const AssociationCommonGraph& acg, const StartPoint& start,
            const NgaParams& params, const SolverConfig& cfg) {
  if (is_ga(params.variant)) throw InvalidArgument("GA variants have no NGA forward pass");
  const int n1 = acg.n1();
  const int n2 = acg.n2();
  const std::size_t cells = static_cast<std::size_t>(n1) * n2;
  const std::vector<char> mask = cfg.mask_incompatible ? compatibility_mask(acg)
                                                       : std::vector<char>{};
  Tape& t = rec.tape;

  Tape::Id s;
  if (start.s0) {
    if (start.s0->rows() != n1 || start.s0->cols() != n2) {
      throw InvalidArgument("start matrix shape does not match the ACG");
    }
    s = t.constant({start.s0->values().begin(), start.s0->values().end()});
  } else if (!params.logits.empty() || !start.noise.empty()) {
    if (!params.logits.empty() && params.logits.size() != cells) {
      throw InvalidArgument("start logits do not match the ACG shape");
    }
    if (!start.noise.empty() && start.noise.size() != cells) {
      throw InvalidArgument("start noise does not match the ACG shape");
    }
    Tape::Id logits;
    if (!params.logits.empty()) {
      rec.logits_id = t.input(params.logits);
      logits = rec.logits_id;
    } else {
      logits = t.constant(std::vector<double>(cells, 0.0));
    }
    if (!start.noise.empty()) logits = t.add(logits, t.constant(start.noise));
    s = t.masked_exp(logits, mask, cfg.exp_clamp, &rec.clamped);
    s = t.sinkhorn(s, n1, n2, cfg.sinkhorn_iters);
  } else {
    const Matrix u = uniform_start(acg);
    s = t.constant({u.values().begin(), u.values().end()});
  }
  check_finite(t.value(s), 0);

  for (int l = 0; l < params.m; ++l) {
    Tape::Id beta;
    switch (params.variant) {
      case Variant::kProduct:
      case Variant::kPositive: {
        rec.w1_ids.push_back(t.input(slice(params.w1, l, params.d)));
        rec.w2_ids.push_back(t.input(slice(params.w2, l, params.d)));
        beta = t.dot(rec.w1_ids.back(), rec.w2_ids.back());
        if (params.variant == Variant::kPositive) beta = t.sigmoid(beta);
        break;
      }
      case Variant::kScalar:
        rec.theta_ids.push_back(t.input({params.theta[l]}));
        beta = rec.theta_ids.back();
        break;
      default:
        beta = t.constant({params.beta(l)});
    }
    const Tape::Id h = t.affinity_matvec(acg, s);
    const Tape::Id z = t.scale(h, beta);
    const Tape::Id e = t.masked_exp(z, mask, cfg.exp_clamp, &rec.clamped);
    s = t.sinkhorn(e, n1, n2, cfg.sinkhorn_iters);
    check_finite(t.value(s), l + 1);
    rec.layer_ids.push_back(s);
  }
  rec.out = s;
}

Matrix to_matrix(const Tape& t, Tape::Id id, int rows, int cols) {
  return Matrix(rows, cols, t.value(id));
}

}  // namespace

ForwardResult nga_forward(const AssociationCommonGraph& acg, const StartPoint& start,
                          const NgaParams& params, const SolverConfig& cfg) {
  Recording rec;
  record(rec, acg, start, params, cfg);
  ForwardResult out;
  out.s = to_matrix(rec.tape, rec.out, acg.n1(), acg.n2());
  out.clamped = rec.clamped;
  for (auto id : rec.layer_ids) out.layers.push_back(to_matrix(rec.tape, id, acg.n1(), acg.n2()));
  return out;
}

ForwardResult nga_forward(const AssociationCommonGraph& acg, const Matrix& s0,
                          const NgaParams& params, const SolverConfig& cfg) {
  StartPoint start;
  start.s0 = s0;
  return nga_forward(acg, start, params, cfg);
}

LossGrad loss_and_grad(const AssociationCommonGraph& acg, const StartPoint& start,
                       const NgaParams& params, const SolverConfig& cfg) {
  Recording rec;
  record(rec, acg, start, params, cfg);
  Tape& t = rec.tape;
  const Tape::Id loss = t.negate(t.quadratic_form(acg, rec.out));
  t.backward(loss);

  LossGrad out;
  out.loss = t.scalar(loss);
  out.s = to_matrix(t, rec.out, acg.n1(), acg.n2());
  out.clamped = rec.clamped;
  out.grad = params;
  for (auto* part : {&out.grad.w1, &out.grad.w2, &out.grad.theta, &out.grad.logits})
    std::fill(part->begin(), part->end(), 0.0);
  for (std::size_t l = 0; l < rec.w1_ids.size(); ++l) {
    const auto& g1 = t.grad(rec.w1_ids[l]);
    const auto& g2 = t.grad(rec.w2_ids[l]);
    std::copy(g1.begin(), g1.end(), out.grad.w1.begin() + l * params.d);
    std::copy(g2.begin(), g2.end(), out.grad.w2.begin() + l * params.d);
  }
  for (std::size_t l = 0; l < rec.theta_ids.size(); ++l) {
    out.grad.theta[l] = t.grad(rec.theta_ids[l])[0];
  }
  if (rec.logits_id >= 0) out.grad.logits = t.grad(rec.logits_id);
  return out;
}

TrainResult train(const AssociationCommonGraph& acg, const SolverConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  if (is_ga(cfg.variant)) throw InvalidArgument("GA variants are not trained");
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  NgaParams params = NgaParams::initialize(cfg, acg.n1(), acg.n2());
  TrainResult out;
  out.params = params;
  out.best_assignment.cols = acg.n2();
  out.best_assignment.col.assign(acg.n1(), HardAssignment::kUnassigned);
  if (acg.node_count() == 0) {
    out.s = Matrix(acg.n1(), acg.n2());
    return out;
  }

  AdamState adam;
  std::vector<double> flat = params.flatten();
  double best_loss = std::numeric_limits<double>::infinity();
  double best_objective = -1.0;
  for (int epoch = 0;; ++epoch) {
    if (cfg.time_budget_s) {
      if (epoch > 0 && elapsed_ms() >= *cfg.time_budget_s * 1000.0) break;
    } else if (epoch >= cfg.epochs) {
      break;
    }
    LossGrad lg = loss_and_grad(acg, StartPoint{}, params, cfg);
    const HardAssignment p = hungarian(lg.s);
    const double objective = objective_j(acg, p);
    if (objective > best_objective) {
      best_objective = objective;
      out.best_assignment = p;
    }
    if (lg.loss < best_loss) {
      best_loss = lg.loss;
      out.params = params;
      out.s = lg.s;
    }
    HistoryEntry entry;
    entry.epoch = epoch;
    entry.loss = lg.loss;
    entry.best_loss = best_loss;
    entry.best_objective = best_objective;
    entry.wall_ms = elapsed_ms();
    entry.clamped = lg.clamped;
    entry.betas = params.betas();
    out.history.push_back(entry);
    if (on_epoch) on_epoch(entry);

    if (params.trainable_count() == 0) break;
    adam.update(flat, lg.grad.flatten(), cfg.learning_rate);
    params.assign_flat(flat);
  }
  out.best_objective = best_objective;
  return out;
}

InferResult infer(const AssociationCommonGraph& acg, const NgaParams& params,
                  const SolverConfig& cfg) {
  InferResult best;
  for (int k = 0; k <= cfg.gumbel_samples; ++k) {
    StartPoint start;
    if (k > 0) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
      const Matrix g = sample_gumbel(rng, acg.n1(), acg.n2(), cfg.gumbel_scale);
      start.noise.assign(g.values().begin(), g.values().end());
    }
    const ForwardResult f = nga_forward(acg, start, params, cfg);
    HardAssignment p = hungarian(f.s);
    CommonSubgraphResult r = decode_common_subgraph(acg, p);
    best.candidate_objectives.push_back(r.objective);
    if (k == 0 || r.objective > best.result.objective) {
      best.result = std::move(r);
      best.assignment = std::move(p);
      best.best_candidate = k;
    }
  }
  return best;
}

SolveOutput solve_acg(const AssociationCommonGraph& acg, const SolverConfig& cfg,
                      const EpochCallback& on_epoch) {
  cfg.validate();
  SolveOutput out;
  if (acg.node_count() == 0) return out;

  if (is_ga(cfg.variant)) {
    const SinkhornOptions options{cfg.sinkhorn_iters, 0.0};
    GaResult r = cfg.variant == Variant::kClassicGa
                     ? classic_ga(acg, cfg.ga, options, cfg.mask_incompatible)
                     : ga_gumbel(acg, cfg.ga, options, cfg.mask_incompatible,
                                 cfg.gumbel_samples, cfg.seed, cfg.gumbel_scale);
    out.result = std::move(r.result);
    return out;
  }

  TrainResult trained = train(acg, cfg, on_epoch);
  InferResult inferred = infer(acg, trained.params, cfg);
  out.result = std::move(inferred.result);
  if (trained.best_objective > out.result.objective) {
    out.result = decode_common_subgraph(acg, trained.best_assignment);
  }
  out.history = std::move(trained.history);
  out.params = std::move(trained.params);
  return out;
}

SolveOutput solve(const GraphPairInstance& instance, const SolverConfig& cfg,
                  const EpochCallback& on_epoch) {
  if (instance.g1.empty() || instance.g2.empty()) {
    throw InvalidArgument("solver needs two non-empty graphs");
  }
  const bool swap = instance.g1.node_count() > instance.g2.node_count();
  const LabeledGraph& a = swap ? instance.g2 : instance.g1;
  const LabeledGraph& b = swap ? instance.g1 : instance.g2;
  const AssociationCommonGraph acg = build_acg(a, b);
  SolveOutput out = solve_acg(acg, cfg, on_epoch);
  out.swapped = swap;
  if (swap) out.result = out.result.transposed();
  return out;
}

}  // namespace nga
