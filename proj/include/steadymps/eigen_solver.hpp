#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "steadymps/tensor.hpp"

namespace steadymps {

/// Implicit Hermitian operator on C^dimension. `apply` must satisfy
/// <x, apply(y)> == conj(<y, apply(x)>) to round-off. `diagonal`, when
/// provided, is used for preconditioning only.
struct LinearMap {
  long dimension = 0;
  std::function<void(const VectorXcd&, VectorXcd&)> apply;
  std::optional<VectorXd> diagonal;

  VectorXcd operator()(const VectorXcd& x) const {
    VectorXcd y(dimension);
    apply(x, y);
    return y;
  }
};

struct EigenPair {
  double value = 0;
  VectorXcd vector;
  double residual_norm = 0;
  long applies = 0;
};

struct IterationLimitError : std::runtime_error {
  IterationLimitError(std::string msg, double value, VectorXcd vector,
                      double residual)
      : std::runtime_error(std::move(msg)),
        best_value(value),
        best_vector(std::move(vector)),
        best_residual(residual) {}
  double best_value;
  VectorXcd best_vector;
  double best_residual;
};

struct EigenSolveOptions {
  long max_subspace = 24;
  /// Operators up to this dimension may be materialized densely as a
  /// fallback when the iteration stalls. Never raised above 4096.
  long dense_fallback_dim = 4096;
  const std::vector<VectorXcd>* deflate = nullptr;
  std::mt19937_64* rng = nullptr;
};

/// Smallest eigenpair of a Hermitian LinearMap by preconditioned
/// Davidson iteration. Throws IterationLimitError (carrying the best
/// candidate) if max_iter operator applications are exhausted and the
/// dimension is too large for the dense fallback.
EigenPair smallest_eigenpair(const LinearMap& op, const VectorXcd& guess,
                             double tol, long max_iter,
                             const EigenSolveOptions& opts = {});

/// Apply op to every basis vector. Only valid for small dimensions.
MatrixXcd materialize(const LinearMap& op);

}  // namespace steadymps
