#pragma once

#include <stdexcept>
#include <string>

namespace nga {

// Base class for every error this library reports. The CLI maps kinds to
// process exit codes, so each failure path throws a specific subclass.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GraphErrorKind {
  kMalformed,
  kIndexOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kInvalidArgument,
};

class GraphError : public Error {
 public:
  GraphError(GraphErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  GraphErrorKind kind() const { return kind_; }

 private:
  GraphErrorKind kind_;
};

// Bad shapes, non-finite values, invalid configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A forward pass produced NaN/Inf. `layer` is 1-based; 0 means the start
// point.
class NumericalError : public Error {
 public:
  NumericalError(int layer, const std::string& what)
      : Error(what), layer_(layer) {}
  int layer() const { return layer_; }

 private:
  int layer_;
};

// The exact solver refused or ran out of time. Distinct from "no solution".
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace nga
