#include "steadymps/ed_oracle.hpp"

#include <Eigen/SVD>

namespace steadymps {

namespace {

long ipow(long base, long exp) {
  long out = 1;
  for (long k = 0; k < exp; ++k) out *= base;
  return out;
}

// Doubled-space matrix of rho -> A rho B on a 1- or 2-site support, with
// per-site combined indices (s_i r_i): element [(s r), (s' r')] equals
// A[s, s'] * B[r', r].
MatrixXcd doubled_superop(const MatrixXcd& a, const MatrixXcd& b, long n_sup,
                          long d) {
  const long pdim = ipow(d, n_sup);
  const long ddim = ipow(d * d, n_sup);
  MatrixXcd out = MatrixXcd::Zero(ddim, ddim);
  for (long s = 0; s < pdim; ++s)
    for (long r = 0; r < pdim; ++r)
      for (long sp = 0; sp < pdim; ++sp)
        for (long rp = 0; rp < pdim; ++rp) {
          const Complex val = a(s, sp) * b(rp, r);
          if (val == Complex(0, 0)) continue;
          // interleave site-by-site: (s_i, r_i) pairs, site 0 most significant
          long row = 0, col = 0;
          for (long i = 0; i < n_sup; ++i) {
            const long shift = n_sup - 1 - i;
            const long si = (s / ipow(d, shift)) % d;
            const long ri = (r / ipow(d, shift)) % d;
            const long spi = (sp / ipow(d, shift)) % d;
            const long rpi = (rp / ipow(d, shift)) % d;
            row = row * d * d + si * d + ri;
            col = col * d * d + spi * d + rpi;
          }
          out(row, col) += val;
        }
  return out;
}

// full += I_left (x) block (x) I_right, accumulated in place.
void add_embedded(MatrixXcd& full, const MatrixXcd& block, long left_dim,
                  long right_dim) {
  const long m = block.rows();
  for (long a = 0; a < left_dim; ++a)
    for (long x = 0; x < m; ++x)
      for (long xp = 0; xp < m; ++xp) {
        const Complex val = block(x, xp);
        if (val == Complex(0, 0)) continue;
        const long row0 = (a * m + x) * right_dim;
        const long col0 = (a * m + xp) * right_dim;
        for (long b = 0; b < right_dim; ++b)
          full(row0 + b, col0 + b) += val;
      }
}

}  // namespace

DenseSuperoperator dense_lindbladian(const ModelSpec& model) {
  validate(model);
  if (model.n_sites > 8)
    throw ModelError("dense superoperator capped at 8 sites");
  const long d = model.phys_dim;
  const long n = model.n_sites;
  const long dim = ipow(d * d, n);
  const Complex im(0, 1);

  DenseSuperoperator out;
  out.n_sites = n;
  out.matrix = MatrixXcd::Zero(dim, dim);

  auto add_term = [&](const std::vector<long>& sites, const MatrixXcd& a,
                      const MatrixXcd& b, Complex coeff) {
    const long n_sup = static_cast<long>(sites.size());
    const MatrixXcd block = coeff * doubled_superop(a, b, n_sup, d);
    const long left = ipow(d * d, sites.front());
    const long right = ipow(d * d, n - 1 - sites.back());
    add_embedded(out.matrix, block, left, right);
  };

  for (const auto& h : model.hamiltonian) {
    const long m = h.op.rows();
    const MatrixXcd id = MatrixXcd::Identity(m, m);
    add_term(h.sites, h.op, id, -im * h.coefficient);
    add_term(h.sites, id, h.op, im * h.coefficient);
  }
  for (const auto& jump : model.lindblad_ops) {
    const auto sup = jump.support();
    const MatrixXcd ell = jump.dense_on_support(d);
    const MatrixXcd id = MatrixXcd::Identity(ell.rows(), ell.cols());
    const MatrixXcd ldl = ell.adjoint() * ell;
    add_term(sup, ell, ell.adjoint(), 1.0);
    add_term(sup, ldl, id, -0.5);
    add_term(sup, id, ldl, -0.5);
  }
  return out;
}

MatrixXcd dense_hamiltonian(const ModelSpec& model) {
  validate(model);
  const long d = model.phys_dim;
  const long n = model.n_sites;
  const long dim = ipow(d, n);
  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  for (const auto& t : model.hamiltonian) {
    const long left = ipow(d, t.sites.front());
    const long right = ipow(d, n - 1 - t.sites.back());
    add_embedded(h, (t.coefficient * t.op).eval(), left, right);
  }
  return h;
}

DenseSteadyState steady_state_dense(const ModelSpec& model,
                                    double sv_threshold) {
  if (model.n_sites > 6)
    throw ModelError("dense steady state capped at 6 sites");
  const DenseSuperoperator sop = dense_lindbladian(model);
  Eigen::BDCSVD<MatrixXcd> svd(sop.matrix, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const long dim = sv.size();

  DenseSteadyState out;
  for (long k = dim - 1; k >= 0 && sv[k] < sv_threshold; --k) ++out.degeneracy;
  for (long k = 0; k < out.degeneracy; ++k)
    out.null_basis.push_back(svd.matrixV().col(dim - 1 - k));

  if (out.degeneracy == 1) {
    MatrixXcd rho =
        unvectorize_density(out.null_basis[0], model.n_sites, model.phys_dim);
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12)
      throw ModelError("unique null vector has vanishing trace");
    rho /= tr;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho,
                                                Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    out.rho = std::move(rho);
  }
  return out;
}

GapResult gap_ldagl(const ModelSpec& model, double sv_threshold) {
  if (model.n_sites > 6) throw ModelError("dense gap capped at 6 sites");
  const DenseSuperoperator sop = dense_lindbladian(model);
  Eigen::BDCSVD<MatrixXcd> svd(sop.matrix);
  const Eigen::VectorXd& sv = svd.singularValues();

  GapResult out;
  double smallest_above = -1;
  for (long k = 0; k < sv.size(); ++k) {
    if (sv[k] < sv_threshold)
      ++out.null_dim;
    else
      smallest_above = sv[k];  // singular values are sorted descending
  }
  if (smallest_above < 0)
    throw ModelError("no singular value above the null cluster");
  out.gap = smallest_above * smallest_above;
  return out;
}

VectorXcd vectorize_density(const MatrixXcd& rho, long n_sites, long phys_dim) {
  const long pdim = ipow(phys_dim, n_sites);
  if (rho.rows() != pdim || rho.cols() != pdim)
    throw ModelError("density matrix dimension mismatch");
  VectorXcd v(ipow(phys_dim * phys_dim, n_sites));
  for (long s = 0; s < pdim; ++s)
    for (long r = 0; r < pdim; ++r) {
      long idx = 0;
      for (long i = 0; i < n_sites; ++i) {
        const long shift = n_sites - 1 - i;
        const long si = (s / ipow(phys_dim, shift)) % phys_dim;
        const long ri = (r / ipow(phys_dim, shift)) % phys_dim;
        idx = idx * phys_dim * phys_dim + si * phys_dim + ri;
      }
      v[idx] = rho(s, r);
    }
  return v;
}

MatrixXcd unvectorize_density(const VectorXcd& v, long n_sites, long phys_dim) {
  const long pdim = ipow(phys_dim, n_sites);
  if (v.size() != ipow(phys_dim * phys_dim, n_sites))
    throw ModelError("vector dimension mismatch");
  MatrixXcd rho(pdim, pdim);
  for (long s = 0; s < pdim; ++s)
    for (long r = 0; r < pdim; ++r) {
      long idx = 0;
      for (long i = 0; i < n_sites; ++i) {
        const long shift = n_sites - 1 - i;
        const long si = (s / ipow(phys_dim, shift)) % phys_dim;
        const long ri = (r / ipow(phys_dim, shift)) % phys_dim;
        idx = idx * phys_dim * phys_dim + si * phys_dim + ri;
      }
      rho(s, r) = v[idx];
    }
  return rho;
}

}  // namespace steadymps
