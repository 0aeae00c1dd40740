#pragma once

#include <optional>
#include <random>
#include <vector>

#include "steadymps/tensor.hpp"

namespace steadymps {

/// Matrix product state over the doubled local space, representing the
/// vectorization |Phi(rho)> of an operator on the chain. Site tensors have
/// shape (left bond, physical, right bond) with extent-1 boundary bonds.
///
/// Choi ordering is fixed globally: |s><r| maps to the combined local index
/// s*d + r, where d*d is the stored local dimension.
class Mps {
 public:
  Mps() = default;
  Mps(long local_dim, std::vector<Tensor> site_tensors,
      std::optional<long> gauge_center = std::nullopt);

  static Mps product_state(long n_sites, long local_dim,
                           const std::vector<VectorXcd>& site_vectors);
  static Mps random(long n_sites, long local_dim, long bond,
                    std::mt19937_64& rng);

  long n_sites() const { return static_cast<long>(tensors_.size()); }
  long local_dim() const { return local_dim_; }
  const Tensor& site(long i) const { return tensors_.at(static_cast<std::size_t>(i)); }
  const std::vector<Tensor>& tensors() const { return tensors_; }
  std::optional<long> gauge_center() const { return gauge_center_; }

  /// Bond extent between sites i and i+1 (i in [0, n_sites-2]).
  long bond(long i) const { return site(i).dim(2); }
  long max_bond() const;

  void set_site(long i, Tensor t, std::optional<long> new_center);

 private:
  long local_dim_ = 0;
  std::vector<Tensor> tensors_;
  std::optional<long> gauge_center_;
};

/// Gauge the state so tensors left of `center` are left isometries and
/// tensors right of it are right isometries. The represented vector is
/// unchanged up to round-off.
Mps canonicalize(const Mps& psi, long center);

/// <a|b> with conjugation on a, by left-to-right transfer contraction.
Complex overlap(const Mps& a, const Mps& b);

double norm(const Mps& psi);

/// Truncate every bond to at most max_bond by a right-to-left SVD sweep
/// after left-canonicalization. Returns the state and the accumulated
/// relative discarded weight, which bounds the fidelity loss.
std::pair<Mps, double> compress(const Mps& psi, long max_bond, double cutoff);

/// The bond-1 vectorization of the identity operator: overlap with any
/// |Phi(rho)> equals tr(rho). Squared norm is d^n exactly.
Mps trace_vector(long n_sites, long phys_dim);

/// ca*a + cb*b by bond-direct-sum.
Mps mps_add(const Mps& a, const Mps& b, Complex ca, Complex cb);

/// Operator adjoint of the represented operator: local index transpose
/// s*d + r -> r*d + s plus entrywise conjugation. Bond dimensions are
/// unchanged.
Mps mps_adjoint(const Mps& psi);

Mps mps_scaled(const Mps& psi, Complex factor);

/// Dense expansion for small chains; site 0 is the most significant index.
VectorXcd expand_mps(const Mps& psi);

}  // namespace steadymps
