#include "steadymps/mpo.hpp"

namespace steadymps {

namespace {

void check_chain(const std::vector<Tensor>& tensors, long local_dim) {
  if (tensors.empty()) throw ShapeError("empty chain");
  long left = 1;
  for (const Tensor& t : tensors) {
    if (t.rank() != 4) throw ShapeError("MPO site tensors must have rank 4");
    if (t.dim(1) != local_dim || t.dim(2) != local_dim)
      throw ShapeError("MPO local dimension mismatch");
    if (t.dim(0) != left) throw ShapeError("adjacent bond extents must match");
    left = t.dim(3);
  }
  if (left != 1) throw ShapeError("boundary bonds must have extent 1");
}

}  // namespace

Mpo::Mpo(long local_dim, std::vector<Tensor> site_tensors)
    : local_dim_(local_dim), tensors_(std::move(site_tensors)) {
  check_chain(tensors_, local_dim_);
}

Mpo Mpo::identity(long n_sites, long local_dim) {
  Tensor w({1, local_dim, local_dim, 1});
  for (long p = 0; p < local_dim; ++p) w({0, p, p, 0}) = 1.0;
  return Mpo(local_dim,
             std::vector<Tensor>(static_cast<std::size_t>(n_sites), w));
}

long Mpo::max_bond() const {
  long m = 1;
  for (const auto& t : tensors_) m = std::max(m, t.dim(3));
  return m;
}

void Mpo::set_site(long i, Tensor t) {
  if (t.rank() != 4 || t.dim(1) != local_dim_ || t.dim(2) != local_dim_)
    throw ShapeError("MPO site tensor shape mismatch");
  tensors_.at(static_cast<std::size_t>(i)) = std::move(t);
}

Mps apply_mpo(const Mpo& o, const Mps& psi) {
  if (o.n_sites() != psi.n_sites() || o.local_dim() != psi.local_dim())
    throw ShapeError("apply_mpo shape mismatch");
  std::vector<Tensor> ts;
  for (long i = 0; i < psi.n_sites(); ++i) {
    const Tensor& w = o.site(i);  // (lo, po, pi, ro)
    const Tensor& a = psi.site(i);  // (l, pi, r)
    Tensor t = contract(w, a, {{2, 1}});  // (lo, po, ro, l, r)
    t = t.permuted({0, 3, 1, 2, 4});      // (lo, l, po, ro, r)
    ts.push_back(t.reshaped({t.dim(0) * t.dim(1), t.dim(2), t.dim(3) * t.dim(4)}));
  }
  return Mps(psi.local_dim(), std::move(ts));
}

Complex expectation(const Mps& psi, const Mpo& o) {
  if (o.n_sites() != psi.n_sites() || o.local_dim() != psi.local_dim())
    throw ShapeError("expectation shape mismatch");
  Tensor env({1, 1, 1});
  env({0, 0, 0}) = 1.0;  // (bra, mpo, ket)
  for (long i = 0; i < psi.n_sites(); ++i) {
    Tensor t = contract(env, psi.site(i), {{2, 0}});           // (a, k, pi, rk)
    t = contract(t, o.site(i), {{1, 0}, {2, 2}});              // (a, rk, po, ro)
    env = contract(psi.site(i).conjugated(), t, {{0, 0}, {1, 2}});  // (ra, rk, ro)
    env = env.permuted({0, 2, 1});                             // (bra, mpo, ket)
  }
  return env({0, 0, 0});
}

Mpo mpo_product(const Mpo& a, const Mpo& b) {
  if (a.n_sites() != b.n_sites() || a.local_dim() != b.local_dim())
    throw ShapeError("mpo_product shape mismatch");
  std::vector<Tensor> ts;
  for (long i = 0; i < a.n_sites(); ++i) {
    const Tensor& wa = a.site(i);  // (la, out, m, ra)
    const Tensor& wb = b.site(i);  // (lb, m, in, rb)
    Tensor t = contract(wa, wb, {{2, 1}});  // (la, out, ra, lb, in, rb)
    t = t.permuted({0, 3, 1, 4, 2, 5});     // (la, lb, out, in, ra, rb)
    ts.push_back(t.reshaped({t.dim(0) * t.dim(1), t.dim(2), t.dim(3),
                             t.dim(4) * t.dim(5)}));
  }
  return Mpo(a.local_dim(), std::move(ts));
}

Mpo mpo_adjoint(const Mpo& a) {
  std::vector<Tensor> ts;
  for (long i = 0; i < a.n_sites(); ++i)
    ts.push_back(a.site(i).permuted({0, 2, 1, 3}).conjugated());
  return Mpo(a.local_dim(), std::move(ts));
}

std::pair<Mpo, double> compress_mpo(const Mpo& o, long max_bond, double cutoff) {
  const long p = o.local_dim();
  std::vector<Tensor> fused;
  for (long i = 0; i < o.n_sites(); ++i) {
    const Tensor& w = o.site(i);
    fused.push_back(w.reshaped({w.dim(0), p * p, w.dim(3)}));
  }
  auto [mps, discarded] = compress(Mps(p * p, std::move(fused)), max_bond, cutoff);
  std::vector<Tensor> out;
  for (long i = 0; i < o.n_sites(); ++i) {
    const Tensor& t = mps.site(i);
    out.push_back(t.reshaped({t.dim(0), p, p, t.dim(2)}));
  }
  return {Mpo(p, std::move(out)), discarded};
}

MatrixXcd expand_mpo(const Mpo& o) {
  Tensor acc = o.site(0);  // (1, O, I, r)
  for (long i = 1; i < o.n_sites(); ++i) {
    acc = contract(acc, o.site(i), {{3, 0}});  // (1, O, I, po, pi, r)
    acc = acc.permuted({0, 1, 3, 2, 4, 5});    // (1, O, po, I, pi, r)
    acc = acc.reshaped({1, acc.dim(1) * acc.dim(2), acc.dim(3) * acc.dim(4),
                        acc.dim(5)});
  }
  const long total = acc.dim(1);
  MatrixXcd m(total, total);
  for (long r = 0; r < total; ++r)
    for (long c = 0; c < total; ++c) m(r, c) = acc({0, r, c, 0});
  return m;
}

}  // namespace steadymps
