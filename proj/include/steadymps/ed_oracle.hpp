#pragma once

#include "steadymps/model_spec.hpp"

namespace steadymps {

/// Dense vectorized Lindbladian for small chains. Deliberately independent
/// of the MPO builder: everything is assembled from ModelSpec by direct
/// Kronecker embedding, so the two code paths cross-check each other.
struct DenseSuperoperator {
  long n_sites = 0;
  MatrixXcd matrix;  // 4^N x 4^N in per-site Choi ordering
};

DenseSuperoperator dense_lindbladian(const ModelSpec& model);

/// Dense Hamiltonian on the physical (2^N) space.
MatrixXcd dense_hamiltonian(const ModelSpec& model);

struct DenseSteadyState {
  MatrixXcd rho;          // hermitized, trace-normalized; empty if degenerate
  long degeneracy = 0;    // null-space dimension at the singular value threshold
  double min_eigenvalue = 0;  // smallest eigenvalue of rho when unique
  std::vector<VectorXcd> null_basis;
};

/// Null space of the dense Lindbladian. When the null space is
/// one-dimensional the null vector is reshaped, hermitized and
/// trace-normalized; otherwise the full basis is returned with the
/// degeneracy flag.
DenseSteadyState steady_state_dense(const ModelSpec& model,
                                    double sv_threshold = 1e-9);

struct GapResult {
  double gap = 0;      // smallest eigenvalue of L^dag L above the null cluster
  long null_dim = 0;
};

/// Gap of L^dag L from the squared singular values of the dense L.
GapResult gap_ldagl(const ModelSpec& model, double sv_threshold = 1e-9);

/// Per-site Choi vectorization |s><r| -> |s r> of a density matrix, with
/// site 0 most significant, matching expand_mps.
VectorXcd vectorize_density(const MatrixXcd& rho, long n_sites, long phys_dim);
MatrixXcd unvectorize_density(const VectorXcd& v, long n_sites, long phys_dim);

}  // namespace steadymps
