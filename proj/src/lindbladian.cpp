#include "steadymps/lindbladian.hpp"

#include <Eigen/SVD>

namespace steadymps {

namespace {

long ipow(long base, long exp) {
  long out = 1;
  for (long k = 0; k < exp; ++k) out *= base;
  return out;
}

MatrixXcd unvec(const VectorXcd& v, long m) {
  MatrixXcd out(m, m);
  for (long o = 0; o < m; ++o)
    for (long i = 0; i < m; ++i) out(o, i) = v[o * m + i];
  return out;
}

struct ProductPiece {
  MatrixXcd left;
  MatrixXcd right;
};

}  // namespace

MatrixXcd superop_local(const MatrixXcd& a, const MatrixXcd& b, long n_support,
                        long phys_dim) {
  const long d = phys_dim;
  const long pdim = ipow(d, n_support);
  if (a.rows() != pdim || b.rows() != pdim)
    throw ModelError("superop_local operator dimension mismatch");
  const long ddim = ipow(d * d, n_support);
  MatrixXcd out = MatrixXcd::Zero(ddim, ddim);
  for (long s = 0; s < pdim; ++s)
    for (long r = 0; r < pdim; ++r)
      for (long sp = 0; sp < pdim; ++sp)
        for (long rp = 0; rp < pdim; ++rp) {
          const Complex val = a(s, sp) * b(rp, r);
          if (val == Complex(0, 0)) continue;
          long row = 0, col = 0;
          for (long i = 0; i < n_support; ++i) {
            const long shift = n_support - 1 - i;
            row = row * d * d + ((s / ipow(d, shift)) % d) * d +
                  (r / ipow(d, shift)) % d;
            col = col * d * d + ((sp / ipow(d, shift)) % d) * d +
                  (rp / ipow(d, shift)) % d;
          }
          out(row, col) += val;
        }
  return out;
}

std::vector<LocalTerm> vectorized_terms(const ModelSpec& model) {
  validate(model);
  const long d = model.phys_dim;
  const Complex im(0, 1);
  std::vector<LocalTerm> out;

  auto push = [&](const std::vector<long>& sites, const MatrixXcd& a,
                  const MatrixXcd& b, Complex coeff) {
    const long n_sup = static_cast<long>(sites.size());
    out.push_back(LocalTerm{sites, superop_local(a, b, n_sup, d), coeff});
  };

  for (const auto& h : model.hamiltonian) {
    const MatrixXcd id = MatrixXcd::Identity(h.op.rows(), h.op.cols());
    push(h.sites, h.op, id, -im * h.coefficient);
    push(h.sites, id, h.op, im * h.coefficient);
  }
  for (const auto& jump : model.lindblad_ops) {
    const auto sup = jump.support();
    const MatrixXcd ell = jump.dense_on_support(d);
    const MatrixXcd id = MatrixXcd::Identity(ell.rows(), ell.cols());
    const MatrixXcd ldl = ell.adjoint() * ell;
    push(sup, ell, ell.adjoint(), 1.0);
    push(sup, ldl, id, -0.5);
    push(sup, id, ldl, -0.5);
  }
  return out;
}

Mpo terms_to_mpo(const std::vector<LocalTerm>& terms, long n_sites,
                 long local_dim) {
  const long m = local_dim;
  std::vector<MatrixXcd> one_site(
      static_cast<std::size_t>(n_sites), MatrixXcd::Zero(m, m));
  std::vector<std::vector<ProductPiece>> crossing(
      static_cast<std::size_t>(std::max<long>(n_sites - 1, 0)));

  // normalized vec(identity) in operator space
  VectorXcd e = VectorXcd::Zero(m * m);
  for (long p = 0; p < m; ++p) e[p * m + p] = 1.0 / std::sqrt(double(m));

  for (const auto& term : terms) {
    if (term.sites.empty() || term.sites.size() > 2)
      throw ModelError("unsupported term support");
    for (long s : term.sites)
      if (s < 0 || s >= n_sites) throw ModelError("term site out of range");

    if (term.sites.size() == 1) {
      if (term.op.rows() != m) throw ModelError("term dimension mismatch");
      one_site[static_cast<std::size_t>(term.sites[0])] +=
          term.coefficient * term.op;
      continue;
    }

    if (term.sites[1] != term.sites[0] + 1)
      throw ModelError("two-site terms must act on adjacent sites");
    if (term.op.rows() != m * m) throw ModelError("term dimension mismatch");
    const long i = term.sites[0];

    // regroup T[(o1 o2),(i1 i2)] into K[(o1 i1),(o2 i2)]
    MatrixXcd k(m * m, m * m);
    for (long o1 = 0; o1 < m; ++o1)
      for (long i1 = 0; i1 < m; ++i1)
        for (long o2 = 0; o2 < m; ++o2)
          for (long i2 = 0; i2 < m; ++i2)
            k(o1 * m + i1, o2 * m + i2) =
                term.coefficient * term.op(o1 * m + o2, i1 * m + i2);

    // peel off identity components so they feed the one-site automaton arcs
    const VectorXcd right_id = k * e;
    k -= right_id * e.transpose();
    one_site[static_cast<std::size_t>(i)] +=
        unvec(right_id, m) / std::sqrt(double(m));
    const VectorXcd left_id = k.transpose() * e;
    k -= e * left_id.transpose();
    one_site[static_cast<std::size_t>(i + 1)] +=
        unvec(left_id, m) / std::sqrt(double(m));

    Eigen::BDCSVD<MatrixXcd> svd(k, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    for (long r = 0; r < sv.size(); ++r) {
      if (sv[r] <= 1e-14 * smax || sv[r] == 0.0) break;
      crossing[static_cast<std::size_t>(i)].push_back(
          {unvec(sv[r] * svd.matrixU().col(r), m),
           unvec(svd.matrixV().col(r).conjugate(), m)});
    }
  }

  const MatrixXcd id = MatrixXcd::Identity(m, m);
  auto set_block = [m](Tensor& w, long row, long col, const MatrixXcd& op) {
    for (long o = 0; o < m; ++o)
      for (long i = 0; i < m; ++i) w({row, o, i, col}) = op(o, i);
  };

  std::vector<Tensor> ws;
  for (long i = 0; i < n_sites; ++i) {
    const long ncl = i > 0 ? static_cast<long>(crossing[static_cast<std::size_t>(i - 1)].size()) : 0;
    const long ncr = i < n_sites - 1 ? static_cast<long>(crossing[static_cast<std::size_t>(i)].size()) : 0;
    const long lb = i == 0 ? 1 : ncl + 2;
    const long rb = i == n_sites - 1 ? 1 : ncr + 2;
    // state layout on an interior bond: 0 = start, 1..nc = pending
    // two-site pieces, last = done
    const long l_start = 0;
    const long l_done = i == 0 ? 0 : lb - 1;
    const long r_start = 0;
    const long r_done = rb - 1;

    Tensor w({lb, m, m, rb});
    if (i < n_sites - 1) set_block(w, l_start, r_start, id);
    if (i > 0) set_block(w, l_done, r_done, id);
    set_block(w, l_start, r_done, one_site[static_cast<std::size_t>(i)]);
    for (long kk = 0; kk < ncr; ++kk)
      set_block(w, l_start, 1 + kk,
                crossing[static_cast<std::size_t>(i)][static_cast<std::size_t>(kk)].left);
    for (long kk = 0; kk < ncl; ++kk)
      set_block(w, 1 + kk, r_done,
                crossing[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(kk)].right);
    ws.push_back(std::move(w));
  }
  return Mpo(m, std::move(ws));
}

Mpo build_lindbladian(const ModelSpec& model) {
  const long d2 = model.phys_dim * model.phys_dim;
  return terms_to_mpo(vectorized_terms(model), model.n_sites, d2);
}

}  // namespace steadymps
