#pragma once

#include "steadymps/model_spec.hpp"

namespace steadymps {

/// Chain of two-level systems with pairwise collective decay:
/// H = sum_i g sigma_i^x, L_i = gamma (sigma_i^- + sigma_{i+1}^-) for
/// i = 1..N-1. The amplitude gamma enters the jump operator as written,
/// so it acts quadratically in the dissipator.
struct DickeParams {
  long n_sites;
  double g;
  double gamma;
};
ModelSpec dicke_low_dim(const DickeParams& p);

/// Nearest-neighbor Ising chain with local pumping:
/// H = V/4 sum sigma^z sigma^z + sum (Omega/2 sigma^x - (V-Delta)/2 sigma^z)
///     + V/4 (sigma_1^z + sigma_N^z),  L_i = sqrt(gamma) sigma_i^+.
struct IsingLocalParams {
  long n_sites;
  double V;
  double Omega;
  double Delta;
  double gamma;
};
ModelSpec ising_local(const IsingLocalParams& p);

/// Ising chain where both the Hamiltonian and the jumps create coherence:
/// H = sum sigma^x sigma^x + g sum sigma^z,
/// L_i = mu sigma_i^+ + nu sigma_{i+1}^- for i < N, plus L_N = mu sigma_N^+.
struct IsingCoherentParams {
  long n_sites;
  double g;
  double mu;
  double nu;
};
ModelSpec ising_coherent(const IsingCoherentParams& p);

/// Construct a model by identifier ("dicke", "ising-local",
/// "ising-coherent") from a parameter map. Missing keys throw ModelError.
ModelSpec make_model(const std::string& model_id, long n_sites,
                     const std::map<std::string, double>& params);

}  // namespace steadymps
