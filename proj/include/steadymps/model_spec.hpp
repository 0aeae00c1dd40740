#pragma once

#include <map>
#include <string>
#include <vector>

#include "steadymps/tensor.hpp"

namespace steadymps {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pauli convention: basis order (|up>, |down>), sigma_z|up> = +|up>,
// sigma_plus = |up><down|.
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd sigma_plus();
Eigen::Matrix2cd sigma_minus();
Eigen::Matrix2cd identity2();

/// One- or two-site operator piece with a scalar coefficient. Two-site
/// terms act on adjacent sites only; `op` is a square matrix on the joint
/// local space in row-major site order.
struct LocalTerm {
  std::vector<long> sites;
  MatrixXcd op;
  Complex coefficient{1.0, 0.0};
};

/// A jump operator L_alpha assembled from LocalTerm pieces whose joint
/// support spans at most two adjacent sites.
struct JumpOperator {
  std::vector<LocalTerm> pieces;

  std::vector<long> support() const;
  /// Dense matrix of the operator on its (1- or 2-site) support.
  MatrixXcd dense_on_support(long phys_dim) const;
};

/// Declarative model: H and {L_alpha} as sums of local terms, plus a
/// parameter record for provenance.
struct ModelSpec {
  long n_sites = 0;
  long phys_dim = 2;
  std::vector<LocalTerm> hamiltonian;
  std::vector<JumpOperator> lindblad_ops;
  std::string model_id;
  std::map<std::string, double> parameters;
  /// Scalar observable tracked for convergence across bond dimensions.
  std::string order_param_id = "mz2";
};

void validate(const ModelSpec& model);

}  // namespace steadymps
