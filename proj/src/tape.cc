#include "nga/tape.h"

#include <algorithm>
#include <cmath>

#include "assign_kernels.h"
#include "nga/assign.h"
#include "nga/error.h"

namespace nga {

Tape::Id Tape::push(std::vector<double> value, Rule rule) {
  Node node;
  node.grad.assign(value.size(), 0.0);
  node.value = std::move(value);
  node.rule = std::move(rule);
  nodes_.push_back(std::move(node));
  return static_cast<Id>(nodes_.size() - 1);
}

Tape::Id Tape::input(std::vector<double> value) { return push(std::move(value), nullptr); }
Tape::Id Tape::constant(std::vector<double> value) { return push(std::move(value), nullptr); }

Tape::Id Tape::dot(Id a, Id b) {
  const auto& x = value(a);
  const auto& y = value(b);
  if (x.size() != y.size()) throw InvalidArgument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return push({s}, [a, b](Tape& t, Id self) {
    const double go = t.g(self)[0];
    const auto& x = t.value(a);
    const auto& y = t.value(b);
    auto& ga = t.g(a);
    for (std::size_t k = 0; k < x.size(); ++k) ga[k] += go * y[k];
    auto& gb = t.g(b);
    for (std::size_t k = 0; k < x.size(); ++k) gb[k] += go * x[k];
  });
}

Tape::Id Tape::sigmoid(Id a) {
  std::vector<double> y(value(a).size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = 1.0 / (1.0 + std::exp(-value(a)[k]));
  return push(std::move(y), [a](Tape& t, Id self) {
    const auto& y = t.value(self);
    const auto& go = t.g(self);
    auto& ga = t.g(a);
    for (std::size_t k = 0; k < y.size(); ++k) ga[k] += go[k] * y[k] * (1.0 - y[k]);
  });
}

Tape::Id Tape::scale(Id x, Id s) {
  const double c = scalar(s);
  std::vector<double> y(value(x));
  for (double& v : y) v *= c;
  return push(std::move(y), [x, s](Tape& t, Id self) {
    const double c = t.scalar(s);
    const auto& xv = t.value(x);
    const auto& go = t.g(self);
    auto& gx = t.g(x);
    double gs = 0.0;
    for (std::size_t k = 0; k < xv.size(); ++k) {
      gx[k] += c * go[k];
      gs += go[k] * xv[k];
    }
    t.g(s)[0] += gs;
  });
}

Tape::Id Tape::add(Id a, Id b) {
  if (value(a).size() != value(b).size()) throw InvalidArgument("add: length mismatch");
  std::vector<double> y(value(a));
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += value(b)[k];
  return push(std::move(y), [a, b](Tape& t, Id self) {
    const auto& go = t.g(self);
    auto& ga = t.g(a);
    for (std::size_t k = 0; k < go.size(); ++k) ga[k] += go[k];
    auto& gb = t.g(b);
    for (std::size_t k = 0; k < go.size(); ++k) gb[k] += go[k];
  });
}

Tape::Id Tape::negate(Id a) {
  std::vector<double> y(value(a));
  for (double& v : y) v = -v;
  return push(std::move(y), [a](Tape& t, Id self) {
    const auto& go = t.g(self);
    auto& ga = t.g(a);
    for (std::size_t k = 0; k < go.size(); ++k) ga[k] -= go[k];
  });
}

Tape::Id Tape::affinity_matvec(const AssociationCommonGraph& acg, Id x) {
  std::vector<double> y(value(x).size());
  acg.multiply(value(x), y);
  const AssociationCommonGraph* a = &acg;
  return push(std::move(y), [a, x](Tape& t, Id self) {
    // A is symmetric.
    std::vector<double> back(t.g(self).size());
    a->multiply(t.g(self), back);
    auto& gx = t.g(x);
    for (std::size_t k = 0; k < back.size(); ++k) gx[k] += back[k];
  });
}

Tape::Id Tape::quadratic_form(const AssociationCommonGraph& acg, Id x) {
  const double q = acg.quadratic_form(value(x));
  const AssociationCommonGraph* a = &acg;
  return push({q}, [a, x](Tape& t, Id self) {
    std::vector<double> ax(t.value(x).size());
    a->multiply(t.value(x), ax);
    const double go = t.g(self)[0];
    auto& gx = t.g(x);
    for (std::size_t k = 0; k < ax.size(); ++k) gx[k] += 2.0 * go * ax[k];
  });
}

Tape::Id Tape::masked_exp(Id z, std::span<const char> mask, double clamp, bool* clamped) {
  const auto& zv = value(z);
  if (!mask.empty() && mask.size() != zv.size()) {
    throw InvalidArgument("masked_exp: mask length mismatch");
  }
  std::vector<double> y(zv.size(), 0.0);
  std::vector<char> live(zv.size(), 0);  // d y / d z nonzero
  for (std::size_t k = 0; k < zv.size(); ++k) {
    if (!mask.empty() && !mask[k]) continue;
    if (zv[k] > clamp) {
      y[k] = std::exp(clamp);
      if (clamped) *clamped = true;
    } else {
      y[k] = std::exp(zv[k]);
      live[k] = 1;
    }
  }
  return push(std::move(y), [z, live = std::move(live)](Tape& t, Id self) {
    const auto& y = t.value(self);
    const auto& go = t.g(self);
    auto& gz = t.g(z);
    for (std::size_t k = 0; k < y.size(); ++k)
      if (live[k]) gz[k] += go[k] * y[k];
  });
}

Tape::Id Tape::floor(Id x, double lo) {
  std::vector<double> y(value(x));
  detail::apply_floor(y, lo);
  return push(std::move(y), [x, lo](Tape& t, Id self) {
    const auto& xv = t.value(x);
    const auto& go = t.g(self);
    auto& gx = t.g(x);
    for (std::size_t k = 0; k < xv.size(); ++k)
      if (xv[k] >= lo) gx[k] += go[k];
  });
}

Tape::Id Tape::pad_square(Id x, int rows, int cols) {
  const auto& xv = value(x);
  const int n = std::max(rows, cols);
  std::vector<double> y = detail::pad_square(xv, rows, cols, detail::pad_fill(xv));
  return push(std::move(y), [x, rows, cols, n](Tape& t, Id self) {
    const auto& go = t.g(self);
    auto& gx = t.g(x);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) gx[i * cols + j] += go[i * n + j];
  });
}

Tape::Id Tape::crop(Id x, int n, int rows, int cols) {
  std::vector<double> y = detail::crop(value(x), n, rows, cols);
  return push(std::move(y), [x, n, rows, cols](Tape& t, Id self) {
    const auto& go = t.g(self);
    auto& gx = t.g(x);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) gx[i * n + j] += go[i * cols + j];
  });
}

Tape::Id Tape::row_normalize(Id x, int rows, int cols) {
  std::vector<double> y(value(x));
  std::vector<double> sums;
  detail::row_normalize(y, rows, cols, sums);
  return push(std::move(y), [x, rows, cols, sums = std::move(sums)](Tape& t, Id self) {
    const auto& y = t.value(self);
    const auto& go = t.g(self);
    auto& gx = t.g(x);
    for (int i = 0; i < rows; ++i) {
      double inner = 0.0;
      for (int j = 0; j < cols; ++j) inner += go[i * cols + j] * y[i * cols + j];
      for (int j = 0; j < cols; ++j) gx[i * cols + j] += (go[i * cols + j] - inner) / sums[i];
    }
  });
}

Tape::Id Tape::col_normalize(Id x, int rows, int cols) {
  std::vector<double> y(value(x));
  std::vector<double> sums;
  detail::col_normalize(y, rows, cols, sums);
  return push(std::move(y), [x, rows, cols, sums = std::move(sums)](Tape& t, Id self) {
    const auto& y = t.value(self);
    const auto& go = t.g(self);
    auto& gx = t.g(x);
    std::vector<double> inner(cols, 0.0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) inner[j] += go[i * cols + j] * y[i * cols + j];
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) gx[i * cols + j] += (go[i * cols + j] - inner[j]) / sums[j];
  });
}

Tape::Id Tape::sinkhorn(Id x, int rows, int cols, int iters) {
  if (iters < 1) throw InvalidArgument("sinkhorn needs iters >= 1");
  if (rows == 0 || cols == 0) return x;
  const int n = std::max(rows, cols);
  Id cur = floor(x, kSinkhornFloor);
  if (rows != cols) cur = pad_square(cur, rows, cols);
  for (int it = 0; it < iters; ++it) {
    cur = row_normalize(cur, n, n);
    cur = col_normalize(cur, n, n);
  }
  if (rows != cols) cur = crop(cur, n, rows, cols);
  return cur;
}

void Tape::backward(Id output) {
  if (value(output).size() != 1) throw InvalidArgument("backward needs a scalar output");
  for (auto& node : nodes_) std::fill(node.grad.begin(), node.grad.end(), 0.0);
  g(output)[0] = 1.0;
  for (Id id = output; id >= 0; --id) {
    if (nodes_[id].rule) nodes_[id].rule(*this, id);
  }
}

}  // namespace nga
