#pragma once

#include "steadymps/mps.hpp"

namespace steadymps {

/// Matrix product operator on the doubled local space. Site tensors have
/// shape (left bond, out physical, in physical, right bond) with extent-1
/// boundary bonds.
class Mpo {
 public:
  Mpo() = default;
  Mpo(long local_dim, std::vector<Tensor> site_tensors);

  static Mpo identity(long n_sites, long local_dim);

  long n_sites() const { return static_cast<long>(tensors_.size()); }
  long local_dim() const { return local_dim_; }
  const Tensor& site(long i) const { return tensors_.at(static_cast<std::size_t>(i)); }
  long bond(long i) const { return site(i).dim(3); }
  long max_bond() const;

  void set_site(long i, Tensor t);

 private:
  long local_dim_ = 0;
  std::vector<Tensor> tensors_;
};

/// Exact MPO application; output bond = input bond * MPO bond.
Mps apply_mpo(const Mpo& o, const Mps& psi);

/// <psi|O|psi> by a single left-to-right transfer pass.
Complex expectation(const Mps& psi, const Mpo& o);

/// Composition a(b(.)); output bond is the product of the bonds, exactly.
Mpo mpo_product(const Mpo& a, const Mpo& b);

/// Conjugate transpose of the represented operator; bond unchanged.
Mpo mpo_adjoint(const Mpo& a);

/// SVD recompression of an MPO treated as an MPS over the fused physical
/// index. With a tiny cutoff this is exact to round-off.
std::pair<Mpo, double> compress_mpo(const Mpo& o, long max_bond, double cutoff);

/// Dense matrix of the represented operator for small chains; site 0 is
/// the most significant index on both sides.
MatrixXcd expand_mpo(const Mpo& o);

}  // namespace steadymps
