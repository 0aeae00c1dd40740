#pragma once

#include "steadymps/model_spec.hpp"
#include "steadymps/mpo.hpp"

namespace steadymps {

/// Matrix of rho -> A rho B on the doubled space of a 1- or 2-site support,
/// with per-site combined Choi indices. The single transposition rule
/// A (x) B^T underlies every block assembled here.
MatrixXcd superop_local(const MatrixXcd& a, const MatrixXcd& b, long n_support,
                        long phys_dim);

/// The doubled-space local-term list of the vectorized Lindbladian:
/// -i(H (x) 1 - 1 (x) H^T) plus the dissipator blocks per jump operator.
std::vector<LocalTerm> vectorized_terms(const ModelSpec& model);

/// Minimal finite-state-automaton MPO for a sum of one-site and adjacent
/// two-site terms. Two-site terms are split into product pieces by an
/// operator-space SVD after extracting identity components.
Mpo terms_to_mpo(const std::vector<LocalTerm>& terms, long n_sites,
                 long local_dim);

/// The vectorized Lindbladian of the model as an MPO over local dimension
/// d^2.
Mpo build_lindbladian(const ModelSpec& model);

}  // namespace steadymps
