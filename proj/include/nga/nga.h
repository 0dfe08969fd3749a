#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nga/acg.h"
#include "nga/classic_ga.h"
#include "nga/graph.h"
#include "nga/matrix.h"

namespace nga {

enum class Variant {
  kProduct,         // beta_l = w1_l . w2_l
  kScalar,          // beta_l = theta_l
  kPositive,        // beta_l = sigmoid(w1_l . w2_l)
  kManualSchedule,  // fixed linear ramp, nothing learned
  kClassicGa,       // graduated assignment baseline
  kGaGumbel,        // graduated assignment with Gumbel-Sinkhorn steps
};

enum class InitMode {
  kUniform,  // S0 = 1 / n2 on compatible cells
  kRandom,   // S0 = sinkhorn(exp(L)), L ~ N(0, 1) trainable logits
};

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);  // throws InvalidArgument
std::string_view init_name(InitMode m);
InitMode parse_init(std::string_view name);

struct SolverConfig {
  int m = 4;
  int d = 32;
  int sinkhorn_iters = 20;
  int gumbel_samples = 10;
  double learning_rate = 1e-3;
  int epochs = 200;
  // When set, training runs until this much wall time has passed and
  // `epochs` is ignored. Results then depend on machine speed.
  std::optional<double> time_budget_s;
  std::uint64_t seed = 0;
  Variant variant = Variant::kProduct;
  InitMode init = InitMode::kUniform;

  double init_std = 0.1;
  double exp_clamp = 80.0;
  double gumbel_scale = 1.0;
  // When set, exp() runs only over cells with an ACG node and the rest
  // enter Sinkhorn as 0. Off by default: every cell gets exp(beta * h).
  bool mask_incompatible = false;
  double manual_beta_start = -0.5;
  double manual_beta_end = 2.0;
  GaSchedule ga;

  void validate() const;  // throws InvalidArgument
};

// Trainable state of one instance. Layer l of w1/w2 occupies [l*d, (l+1)*d).
struct NgaParams {
  Variant variant = Variant::kProduct;
  int m = 0;
  int d = 0;
  std::vector<double> w1;
  std::vector<double> w2;
  std::vector<double> theta;   // kScalar only
  std::vector<double> logits;  // n1 * n2, InitMode::kRandom only
  double manual_beta_start = -0.5;  // kManualSchedule ramp
  double manual_beta_end = 2.0;

  // Draws w1, w2 ~ N(0, init_std^2) from cfg.seed. kScalar starts theta at
  // the product-variant betas of the same seed. Logits are drawn when
  // cfg.init is kRandom.
  static NgaParams initialize(const SolverConfig& cfg, int n1, int n2);

  double beta(int layer) const;
  std::vector<double> betas() const;
  std::size_t trainable_count() const;
  std::vector<double> flatten() const;
  void assign_flat(std::span<const double> flat);
};

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step = 0;
  std::vector<double> m;
  std::vector<double> v;

  void update(std::vector<double>& x, std::span<const double> grad, double lr);
};

struct ForwardResult {
  Matrix s;
  bool clamped = false;       // some exponent hit cfg.exp_clamp
  std::vector<Matrix> layers;  // S after each layer; layers.back() == s
};

// Where the forward pass starts. An explicit s0 is used as a constant.
// Otherwise S0 = sinkhorn(exp(L + noise)) when params carry logits or noise
// is given (L = 0 without logits), and uniform_start(acg) when neither.
struct StartPoint {
  std::optional<Matrix> s0;
  std::vector<double> noise;
};

// m layers of: h = A vec(S); S = sinkhorn(exp(beta_l * h)). Throws
// NumericalError with the layer index on a non-finite intermediate.
ForwardResult nga_forward(const AssociationCommonGraph& acg, const StartPoint& start,
                          const NgaParams& params, const SolverConfig& cfg);
ForwardResult nga_forward(const AssociationCommonGraph& acg, const Matrix& s0,
                          const NgaParams& params, const SolverConfig& cfg);

struct LossGrad {
  double loss = 0.0;  // -J(S)
  NgaParams grad;     // same shape as params
  Matrix s;
  bool clamped = false;
};

LossGrad loss_and_grad(const AssociationCommonGraph& acg, const StartPoint& start,
                       const NgaParams& params, const SolverConfig& cfg);

struct HistoryEntry {
  int epoch = 0;
  double loss = 0.0;
  double best_loss = 0.0;
  double best_objective = 0.0;  // best decoded J so far
  double wall_ms = 0.0;
  bool clamped = false;
  std::vector<double> betas;
};

struct TrainResult {
  NgaParams params;  // lowest-loss parameters seen
  Matrix s;          // forward output at those parameters
  std::vector<HistoryEntry> history;
  HardAssignment best_assignment;  // best decode over all epochs
  double best_objective = 0.0;
};

using EpochCallback = std::function<void(const HistoryEntry&)>;

TrainResult train(const AssociationCommonGraph& acg, const SolverConfig& cfg,
                  const EpochCallback& on_epoch = {});

struct InferResult {
  CommonSubgraphResult result;
  HardAssignment assignment;
  int best_candidate = 0;  // 0 is the noise-free run
  std::vector<double> candidate_objectives;
};

// Noise-free run plus cfg.gumbel_samples Gumbel-perturbed starts; sample k
// (1-based) uses derive_seed(cfg.seed, k). Highest objective wins, earliest
// candidate on ties.
InferResult infer(const AssociationCommonGraph& acg, const NgaParams& params,
                  const SolverConfig& cfg);

struct SolveOutput {
  CommonSubgraphResult result;  // in the caller's (g1, g2) orientation
  std::vector<HistoryEntry> history;
  NgaParams params;
  bool swapped = false;  // g1 had more nodes and was solved as g2
};

// Full pipeline for cfg.variant on an ACG: train + infer for the learned
// variants, a single schedule for kManualSchedule, and the GA baselines.
// The reported result is the better of the inference decode and the best
// decode seen during training.
SolveOutput solve_acg(const AssociationCommonGraph& acg, const SolverConfig& cfg,
                      const EpochCallback& on_epoch = {});

// solve_acg on build_acg of the pair, with the smaller graph as rows.
SolveOutput solve(const GraphPairInstance& instance, const SolverConfig& cfg,
                  const EpochCallback& on_epoch = {});

}  // namespace nga
