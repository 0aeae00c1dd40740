#pragma once

#include <string>
#include <vector>

#include "steadymps/mps.hpp"

namespace steadymps {

// All observables below expect a trace-normalized, hermitized state; they
// evaluate tr(O rho) by transfer contraction against the trace vector.

/// <sigma_site^axis>, axis in {'x','y','z'}.
double local_pauli(const Mps& rho, long site, char axis);

/// All N local polarizations along one axis in a single pass.
VectorXd pauli_profile(const Mps& rho, char axis);

/// Symmetric table t(i,j) = <sigma_i^axis sigma_j^axis>, diagonal 1.
/// One left-to-right environment pass per row.
Eigen::MatrixXd two_point_table(const Mps& rho, char axis);

/// <M_z^2> with M_z = sum_i (-1)^i sigma_i^z / N; the antiferromagnetic
/// order parameter squared, in [0, 1].
double staggered_mz_sq(const Mps& rho);

enum class SpinNormalization { PerSite, Total };

/// <(sum_i sigma_i^axis)^2>, divided by N^2 for the per-site variant.
double collective_spin_sq(const Mps& rho, char axis, SpinNormalization norm);

/// Connected correlator <s^z_ref s^z_{ref+dist}> - <s^z_ref><s^z_{ref+dist}>.
double connected_zz(const Mps& rho, long ref_site, long distance);

/// tr rho^2 as the squared Euclidean norm of the vectorized state. Exact
/// for Hermitian rho.
double purity(const Mps& rho);

struct ObservableRecord {
  std::string name;
  std::vector<long> sites;
  double value = 0;
  long n_sites = 0;
  long bond_dim = 0;
};

}  // namespace steadymps
