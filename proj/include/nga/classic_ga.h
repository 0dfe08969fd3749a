#pragma once

#include <cstdint>
#include <vector>

#include "nga/acg.h"
#include "nga/assign.h"
#include "nga/matrix.h"

namespace nga {

// Geometric annealing schedule beta_t = beta0 * growth^t, t < max_iters.
// Defaults follow common graduated-assignment practice; they are tunable,
// not tuned.
struct GaSchedule {
  double beta0 = 0.5;
  double growth = 1.075;
  int max_iters = 50;
  int inner_iters = 4;
  // Self-amplification added to the diagonal of A. 0 keeps the plain
  // objective; max_degree() + eps makes A + gamma I positive definite.
  double gamma = 0.0;
  // Inner loop stops once max |S_new - S| < tol.
  double tol = 1e-6;
};

// Cells whose pair has an ACG node, as a row-major n1 x n2 mask.
std::vector<char> compatibility_mask(const AssociationCommonGraph& acg);

// 1 / n2 on compatible cells, 0 elsewhere.
Matrix uniform_start(const AssociationCommonGraph& acg);

// One softassign step: sinkhorn(exp(beta * ((A + gamma I) vec(s) - max))).
// With `masked`, cells without an ACG node get weight 0 before the floor.
Matrix ga_step(const AssociationCommonGraph& acg, const Matrix& s, double beta,
               double gamma, const SinkhornOptions& sinkhorn_options, bool masked);

struct GaResult {
  Matrix s;
  HardAssignment assignment;
  CommonSubgraphResult result;
  int outer_iters = 0;
  // J(S) after each outer iteration.
  std::vector<double> objective_trace;
};

// Forward-only graduated assignment, decoded with the Hungarian method at the
// end. Starts from uniform_start(acg) unless `start` is given. Throws
// InvalidArgument unless beta0 > 0 and growth > 1.
GaResult classic_ga(const AssociationCommonGraph& acg, const GaSchedule& schedule,
                    const SinkhornOptions& sinkhorn_options = {}, bool masked = false,
                    const Matrix* start = nullptr);

// classic_ga plus `samples` noisy runs in which every softassign step is a
// Gumbel-Sinkhorn step, sinkhorn(exp(beta * h + g)), with fresh noise drawn
// from derive_seed(seed, k + 1) for run k. Keeps the best decode, earliest on
// ties.
GaResult ga_gumbel(const AssociationCommonGraph& acg, const GaSchedule& schedule,
                   const SinkhornOptions& sinkhorn_options, bool masked, int samples,
                   std::uint64_t seed, double noise_scale = 1.0);

struct EnergyValue {
  double value = 0.0;
  bool clamped = false;  // some entry was <= 0 and was floored
};

// -1/2 vec(S)^T A vec(S) - gamma/2 |vec(S)|^2 + (1/beta) sum S log S, over all
// n1 x n2 cells. Entries <= 0 are floored at kSinkhornFloor and flagged.
// Throws InvalidArgument for beta == 0.
EnergyValue compute_energy(const AssociationCommonGraph& acg, const Matrix& s,
                           double beta, double gamma);

// Linear response of J around a point S_l of a square problem.
//
// For each beta: S(beta) = sinkhorn(exp(beta * h)) with h = A vec(S_l) and no
// masking, dJ(beta) = J(S(beta)) - J(S_l) and
// slope = (dJ(beta) - dJ(-beta)) / (2 beta), compared against Var(h), the
// population variance over all n^2 cells. `centred_slope` is the first-order
// prediction (2/n) <C(h), A vec(U)>, where C double-centres rows and columns
// and U is the uniform matrix.
struct LinearResponseRow {
  double beta = 0.0;
  double delta_j = 0.0;
  double delta_j_negative = 0.0;
  double slope = 0.0;
  double relative_error = 0.0;          // |slope - Var(h)| / Var(h)
  double centred_relative_error = 0.0;  // |slope - centred_slope| / |centred_slope|
};

struct LinearResponseReport {
  double var_h = 0.0;
  double centred_slope = 0.0;
  bool degenerate = false;  // Var(h) == 0 up to rounding
  std::vector<LinearResponseRow> rows;
};

LinearResponseReport linear_response_probe(const AssociationCommonGraph& acg,
                                    const Matrix& local_opt_s,
                                    const std::vector<double>& betas);

// Small-beta expansion of one unmasked layer on a square problem. For each
// beta, S = sinkhorn(exp(beta * h)), h = A vec(s0), and the max residual is
// taken against two first-order forms:
//   mean_form:    (1/n) [1 + beta (h_ij - mean(h))]
//   centred_form: (1/n) [1 + beta C(h)_ij], C = row/column double-centring.
struct ExpansionRow {
  double beta = 0.0;
  double mean_form_residual = 0.0;
  double centred_form_residual = 0.0;
};

std::vector<ExpansionRow> small_beta_probe(const AssociationCommonGraph& acg,
                                           const Matrix& s0,
                                           const std::vector<double>& betas);

// Sinkhorn settings used by the probes: tight tolerance, generous cap.
SinkhornOptions probe_sinkhorn_options();

}  // namespace nga
