#include "nga/classic_ga.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nga/error.h"
#include "nga/rng.h"

namespace nga {

std::vector<char> compatibility_mask(const AssociationCommonGraph& acg) {
  std::vector<char> mask(static_cast<std::size_t>(acg.n1()) * acg.n2(), 0);
  for (int k = 0; k < acg.node_count(); ++k) mask[acg.cell(k)] = 1;
  return mask;
}

Matrix uniform_start(const AssociationCommonGraph& acg) {
  Matrix s(acg.n1(), acg.n2());
  if (acg.n2() == 0) return s;
  for (int k = 0; k < acg.node_count(); ++k) s.values()[acg.cell(k)] = 1.0 / acg.n2();
  return s;
}

namespace {

// exp(z - max z) on the allowed cells, 0 elsewhere.
Matrix shifted_exp(const std::vector<double>& z, const std::vector<char>& mask,
                   int rows, int cols) {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < z.size(); ++k)
    if (mask.empty() || mask[k]) top = std::max(top, z[k]);
  Matrix w(rows, cols);
  if (!std::isfinite(top)) return w;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (mask.empty() || mask[k]) w.values()[k] = std::exp(z[k] - top);
  return w;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    d = std::max(d, std::abs(a.values()[k] - b.values()[k]));
  return d;
}

std::vector<double> apply_a(const AssociationCommonGraph& acg, const Matrix& s) {
  std::vector<double> h(s.size());
  acg.multiply(s.values(), h);
  return h;
}

}  // namespace

namespace {

Matrix noisy_step(const AssociationCommonGraph& acg, const Matrix& s, double beta,
                  double gamma, const SinkhornOptions& sinkhorn_options, bool masked,
                  Rng* rng, double noise_scale) {
  std::vector<double> z = apply_a(acg, s);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = beta * (z[k] + gamma * s.values()[k]);
  if (rng) {
    for (double& x : z) x += noise_scale * rng->gumbel();
  }
  const std::vector<char> mask = masked ? compatibility_mask(acg) : std::vector<char>{};
  return sinkhorn(shifted_exp(z, mask, s.rows(), s.cols()), sinkhorn_options);
}

GaResult run_ga(const AssociationCommonGraph& acg, const GaSchedule& schedule,
                const SinkhornOptions& sinkhorn_options, bool masked, const Matrix* start,
                Rng* rng, double noise_scale) {
  if (!(schedule.beta0 > 0.0)) throw InvalidArgument("classic_ga needs beta0 > 0");
  if (!(schedule.growth > 1.0)) throw InvalidArgument("classic_ga needs growth > 1");
  if (schedule.max_iters < 1 || schedule.inner_iters < 1) {
    throw InvalidArgument("classic_ga needs positive iteration counts");
  }
  GaResult out;
  out.s = start ? *start : uniform_start(acg);
  if (out.s.rows() != acg.n1() || out.s.cols() != acg.n2()) {
    throw InvalidArgument("classic_ga start has the wrong shape");
  }
  if (acg.node_count() > 0) {
    double beta = schedule.beta0;
    for (int t = 0; t < schedule.max_iters; ++t, beta *= schedule.growth) {
      for (int inner = 0; inner < schedule.inner_iters; ++inner) {
        Matrix next = noisy_step(acg, out.s, beta, schedule.gamma, sinkhorn_options, masked,
                                 rng, noise_scale);
        const double change = max_abs_diff(next, out.s);
        out.s = std::move(next);
        if (change < schedule.tol) break;
      }
      out.objective_trace.push_back(objective_j(acg, out.s));
      out.outer_iters = t + 1;
    }
  }
  out.assignment = hungarian(out.s);
  out.result = decode_common_subgraph(acg, out.assignment);
  return out;
}

}  // namespace

Matrix ga_step(const AssociationCommonGraph& acg, const Matrix& s, double beta,
               double gamma, const SinkhornOptions& sinkhorn_options, bool masked) {
  return noisy_step(acg, s, beta, gamma, sinkhorn_options, masked, nullptr, 0.0);
}

GaResult classic_ga(const AssociationCommonGraph& acg, const GaSchedule& schedule,
                    const SinkhornOptions& sinkhorn_options, bool masked,
                    const Matrix* start) {
  return run_ga(acg, schedule, sinkhorn_options, masked, start, nullptr, 0.0);
}

GaResult ga_gumbel(const AssociationCommonGraph& acg, const GaSchedule& schedule,
                   const SinkhornOptions& sinkhorn_options, bool masked, int samples,
                   std::uint64_t seed, double noise_scale) {
  if (samples < 0) throw InvalidArgument("ga_gumbel needs samples >= 0");
  GaResult best = classic_ga(acg, schedule, sinkhorn_options, masked);
  for (int k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k) + 1));
    GaResult cand = run_ga(acg, schedule, sinkhorn_options, masked, nullptr, &rng, noise_scale);
    if (cand.result.objective > best.result.objective) best = std::move(cand);
  }
  return best;
}

EnergyValue compute_energy(const AssociationCommonGraph& acg, const Matrix& s,
                           double beta, double gamma) {
  if (beta == 0.0) throw InvalidArgument("compute_energy needs beta != 0");
  if (s.rows() != acg.n1() || s.cols() != acg.n2()) {
    throw InvalidArgument("compute_energy: shape mismatch");
  }
  EnergyValue e;
  Matrix v = s;
  for (double& x : v.values()) {
    if (x <= 0.0) {
      x = kSinkhornFloor;
      e.clamped = true;
    }
  }
  double sq = 0.0, entropy = 0.0;
  for (double x : v.values()) {
    sq += x * x;
    entropy += x * std::log(x);
  }
  e.value = -0.5 * acg.quadratic_form(v.values()) - 0.5 * gamma * sq + entropy / beta;
  return e;
}

SinkhornOptions probe_sinkhorn_options() { return {20000, 1e-14}; }

namespace {

void require_square(const AssociationCommonGraph& acg, const Matrix& s, const char* what) {
  if (acg.n1() != acg.n2() || acg.n1() == 0) {
    throw InvalidArgument(std::string(what) + " needs a non-empty square problem");
  }
  if (s.rows() != acg.n1() || s.cols() != acg.n2()) {
    throw InvalidArgument(std::string(what) + ": shape mismatch");
  }
}

Matrix exp_scaled(const std::vector<double>& h, double beta, int n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < h.size(); ++k) m.values()[k] = std::exp(beta * h[k]);
  return m;
}

std::vector<double> double_centre(const std::vector<double>& h, int n) {
  std::vector<double> row(n, 0.0), col(n, 0.0);
  double all = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      row[i] += h[i * n + j] / n;
      col[j] += h[i * n + j] / n;
      all += h[i * n + j];
    }
  all /= static_cast<double>(n) * n;
  std::vector<double> c(h.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i * n + j] = h[i * n + j] - row[i] - col[j] + all;
  return c;
}

}  // namespace

LinearResponseReport linear_response_probe(const AssociationCommonGraph& acg,
                                    const Matrix& local_opt_s,
                                    const std::vector<double>& betas) {
  require_square(acg, local_opt_s, "linear_response_probe");
  const int n = acg.n1();
  const std::vector<double> h = apply_a(acg, local_opt_s);
  const double cells = static_cast<double>(h.size());
  double mean = 0.0;
  for (double x : h) mean += x / cells;
  LinearResponseReport report;
  for (double x : h) report.var_h += (x - mean) * (x - mean) / cells;
  // Equal h values still leave a rounding-level variance.
  report.degenerate = report.var_h <= 1e-20 * (1.0 + mean * mean);

  const Matrix u(n, n, 1.0 / n);
  const std::vector<double> au = apply_a(acg, u);
  const std::vector<double> c = double_centre(h, n);
  for (std::size_t k = 0; k < c.size(); ++k) report.centred_slope += 2.0 / n * c[k] * au[k];

  const double j0 = objective_j(acg, local_opt_s);
  const auto options = probe_sinkhorn_options();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double beta : betas) {
    if (beta == 0.0) throw InvalidArgument("linear_response_probe needs beta != 0");
    LinearResponseRow row;
    row.beta = beta;
    row.delta_j = objective_j(acg, sinkhorn(exp_scaled(h, beta, n), options)) - j0;
    row.delta_j_negative = objective_j(acg, sinkhorn(exp_scaled(h, -beta, n), options)) - j0;
    row.slope = (row.delta_j - row.delta_j_negative) / (2.0 * beta);
    row.relative_error =
        report.degenerate ? nan : std::abs(row.slope - report.var_h) / report.var_h;
    row.centred_relative_error =
        report.centred_slope == 0.0
            ? nan
            : std::abs(row.slope - report.centred_slope) / std::abs(report.centred_slope);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<ExpansionRow> small_beta_probe(const AssociationCommonGraph& acg,
                                           const Matrix& s0,
                                           const std::vector<double>& betas) {
  require_square(acg, s0, "small_beta_probe");
  const int n = acg.n1();
  const std::vector<double> h = apply_a(acg, s0);
  double mean = 0.0;
  for (double x : h) mean += x / static_cast<double>(h.size());
  const std::vector<double> c = double_centre(h, n);
  const auto options = probe_sinkhorn_options();

  std::vector<ExpansionRow> rows;
  for (double beta : betas) {
    const Matrix s = sinkhorn(exp_scaled(h, beta, n), options);
    ExpansionRow row;
    row.beta = beta;
    for (std::size_t k = 0; k < h.size(); ++k) {
      const double mean_form = (1.0 + beta * (h[k] - mean)) / n;
      const double centred_form = (1.0 + beta * c[k]) / n;
      row.mean_form_residual =
          std::max(row.mean_form_residual, std::abs(s.values()[k] - mean_form));
      row.centred_form_residual =
          std::max(row.centred_form_residual, std::abs(s.values()[k] - centred_form));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nga
