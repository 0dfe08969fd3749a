#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nga/acg.h"

namespace nga {

// Minimal reverse-mode differentiation over flat double vectors.
//
// Every op appends a node holding its value and an adjoint rule; backward()
// seeds a scalar output with 1 and replays the rules in reverse creation
// order. Matrices are row-major vectors with explicit shapes. The tape keeps
// references to any AssociationCommonGraph passed in, so the graph must
// outlive it.
class Tape {
 public:
  using Id = int;

  Id input(std::vector<double> value);
  Id constant(std::vector<double> value);

  const std::vector<double>& value(Id id) const { return nodes_[id].value; }
  const std::vector<double>& grad(Id id) const { return nodes_[id].grad; }
  double scalar(Id id) const { return nodes_[id].value.at(0); }
  std::size_t size() const { return nodes_.size(); }

  Id dot(Id a, Id b);                  // scalar a . b
  Id sigmoid(Id a);                    // elementwise
  Id scale(Id x, Id scalar);           // scalar * x
  Id add(Id a, Id b);                  // elementwise
  Id negate(Id a);
  Id affinity_matvec(const AssociationCommonGraph& acg, Id x);   // A x
  Id quadratic_form(const AssociationCommonGraph& acg, Id x);    // x^T A x

  // y = mask ? exp(min(z, clamp)) : 0. An empty mask keeps every cell.
  // Sets *clamped when some unmasked entry exceeded clamp.
  Id masked_exp(Id z, std::span<const char> mask, double clamp, bool* clamped);

  Id floor(Id x, double lo);
  // Pads rows x cols to n x n, n = max(rows, cols), with min(x) * 1e-3. The
  // fill is treated as a constant.
  Id pad_square(Id x, int rows, int cols);
  Id crop(Id x, int n, int rows, int cols);
  Id row_normalize(Id x, int rows, int cols);
  Id col_normalize(Id x, int rows, int cols);

  // Same sequence of kernels as nga::sinkhorn with a fixed iteration count.
  Id sinkhorn(Id x, int rows, int cols, int iters);

  void backward(Id output);

 private:
  using Rule = std::function<void(Tape&, Id)>;
  struct Node {
    std::vector<double> value;
    std::vector<double> grad;
    Rule rule;
  };

  Id push(std::vector<double> value, Rule rule);
  std::vector<double>& g(Id id) { return nodes_[id].grad; }

  std::vector<Node> nodes_;
};

}  // namespace nga
