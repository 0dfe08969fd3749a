#include "nga/qap.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nga/error.h"
#include "nga/rng.h"

namespace nga {

KbInstance generate_kb_instance(std::uint64_t seed, int n, double zero_prob) {
  if (n < 1) throw InvalidArgument("KB instance needs n >= 1");
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.uniform();
  }
  KbInstance inst{Matrix(n, n), Matrix(n, n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) inst.distance(a, b) = std::hypot(x[a] - x[b], y[a] - y[b]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double f = 0.5 * (rng.uniform() + rng.uniform());
      const double v = rng.uniform() < zero_prob ? 0.0 : f;
      inst.flow(i, j) = v;
      inst.flow(j, i) = v;
    }
  return inst;
}

namespace {

void check_instance(const KbInstance& inst) {
  const int n = inst.flow.rows();
  if (inst.flow.cols() != n || inst.distance.rows() != n || inst.distance.cols() != n) {
    throw InvalidArgument("KB instance needs square F and D of equal size");
  }
  for (double v : inst.flow.values())
    if (!std::isfinite(v)) throw InvalidArgument("KB flow has a non-finite entry");
  for (double v : inst.distance.values())
    if (!std::isfinite(v)) throw InvalidArgument("KB distance has a non-finite entry");
}

}  // namespace

double kb_cost(const KbInstance& inst, const std::vector<int>& perm) {
  const int n = inst.size();
  if (static_cast<int>(perm.size()) != n) throw InvalidArgument("permutation length mismatch");
  double cost = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost += inst.flow(i, j) * inst.distance(perm[i], perm[j]);
  return cost;
}

AssociationCommonGraph kb_affinity(const KbInstance& inst) {
  check_instance(inst);
  const int n = inst.size();
  double fmax = 0.0, dmax = 0.0;
  for (double v : inst.flow.values()) fmax = std::max(fmax, std::abs(v));
  for (double v : inst.distance.values()) dmax = std::max(dmax, std::abs(v));
  const double c = fmax * dmax;
  std::vector<AffinityEntry> entries;
  entries.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int b = 0; b < n; ++b) {
          if (b == a) continue;
          const double w = c - 0.5 * (inst.flow(i, j) * inst.distance(a, b) +
                                      inst.flow(j, i) * inst.distance(b, a));
          entries.push_back({i * n + a, j * n + b, std::max(w, 0.0)});
        }
      }
  return AssociationCommonGraph::from_affinity(n, n, std::move(entries));
}

SolverConfig qap_config() {
  SolverConfig cfg;
  cfg.learning_rate = 1e-2;
  cfg.gumbel_samples = 100;
  return cfg;
}

QapResult qap_solve(const AssociationCommonGraph& affinity, const SolverConfig& cfg) {
  if (affinity.n1() != affinity.n2()) throw InvalidArgument("QAP needs a square problem");
  const SolveOutput out = solve_acg(affinity, cfg);
  QapResult r;
  r.permutation.assign(affinity.n1(), -1);
  for (auto [u, v] : out.result.mapping) r.permutation[u] = v;
  // Every cell is a node, so the decode is a full permutation unless the
  // affinity was empty; fill any gap with the unused columns in order.
  std::vector<char> used(affinity.n2(), 0);
  for (int v : r.permutation)
    if (v >= 0) used[v] = 1;
  int next = 0;
  for (int& v : r.permutation) {
    if (v >= 0) continue;
    while (used[next]) ++next;
    v = next;
    used[next] = 1;
  }
  HardAssignment p{affinity.n2(), r.permutation};
  r.objective = objective_j(affinity, p);
  return r;
}

QapResult qap_solve(const KbInstance& inst, const SolverConfig& cfg) {
  QapResult r = qap_solve(kb_affinity(inst), cfg);
  r.cost = kb_cost(inst, r.permutation);
  return r;
}

QapResult brute_force_kb(const KbInstance& inst) {
  check_instance(inst);
  std::vector<int> perm(inst.size());
  std::iota(perm.begin(), perm.end(), 0);
  QapResult best;
  best.permutation = perm;
  best.cost = kb_cost(inst, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double c = kb_cost(inst, perm);
    if (c < best.cost) {
      best.cost = c;
      best.permutation = perm;
    }
  }
  return best;
}

}  // namespace nga
