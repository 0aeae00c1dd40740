#include "steadymps/mps.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace steadymps {

namespace {

void check_chain(const std::vector<Tensor>& tensors, long local_dim) {
  if (tensors.empty()) throw ShapeError("empty chain");
  long left = 1;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const Tensor& t = tensors[i];
    if (t.rank() != 3) throw ShapeError("site tensors must have rank 3");
    if (t.dim(1) != local_dim) throw ShapeError("local dimension mismatch");
    if (t.dim(0) != left) throw ShapeError("adjacent bond extents must match");
    left = t.dim(2);
  }
  if (left != 1) throw ShapeError("boundary bonds must have extent 1");
}

// thin QR: m (rows x cols) = q (rows x k) * r (k x cols), k = min(rows, cols)
void thin_qr(const MatrixXcd& m, MatrixXcd& q, MatrixXcd& r) {
  const long k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<MatrixXcd> qr(m);
  q = qr.householderQ() * MatrixXcd::Identity(m.rows(), k);
  r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
}

}  // namespace

Mps::Mps(long local_dim, std::vector<Tensor> site_tensors,
         std::optional<long> gauge_center)
    : local_dim_(local_dim),
      tensors_(std::move(site_tensors)),
      gauge_center_(gauge_center) {
  check_chain(tensors_, local_dim_);
  if (gauge_center_ && (*gauge_center_ < 0 || *gauge_center_ >= n_sites()))
    throw ShapeError("gauge center out of range");
}

Mps Mps::product_state(long n_sites, long local_dim,
                       const std::vector<VectorXcd>& site_vectors) {
  if (static_cast<long>(site_vectors.size()) != n_sites)
    throw ShapeError("product state needs one vector per site");
  std::vector<Tensor> ts;
  ts.reserve(static_cast<std::size_t>(n_sites));
  for (const auto& v : site_vectors) {
    if (v.size() != local_dim) throw ShapeError("site vector dimension mismatch");
    ts.push_back(Tensor::from_vector(v).reshaped({1, local_dim, 1}));
  }
  return Mps(local_dim, std::move(ts));
}

Mps Mps::random(long n_sites, long local_dim, long bond, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<Tensor> ts;
  long left = 1;
  for (long i = 0; i < n_sites; ++i) {
    // cap bonds at the representable extent
    long right = 1;
    if (i < n_sites - 1) {
      double cap_l = std::pow(static_cast<double>(local_dim), i + 1);
      double cap_r = std::pow(static_cast<double>(local_dim), n_sites - 1 - i);
      right = std::min<long>(
          bond, static_cast<long>(std::min(
                    std::min(cap_l, cap_r), static_cast<double>(bond))));
      right = std::max<long>(right, 1);
    }
    Tensor t({left, local_dim, right});
    for (long k = 0; k < t.size(); ++k)
      t.data()[k] = Complex(dist(rng), dist(rng));
    ts.push_back(std::move(t));
    left = right;
  }
  return Mps(local_dim, std::move(ts));
}

long Mps::max_bond() const {
  long m = 1;
  for (const auto& t : tensors_) m = std::max(m, t.dim(2));
  return m;
}

void Mps::set_site(long i, Tensor t, std::optional<long> new_center) {
  if (t.rank() != 3 || t.dim(1) != local_dim_)
    throw ShapeError("site tensor shape mismatch");
  tensors_.at(static_cast<std::size_t>(i)) = std::move(t);
  gauge_center_ = new_center;
}

Mps canonicalize(const Mps& psi, long center) {
  const long n = psi.n_sites();
  if (center < 0 || center >= n) throw ShapeError("gauge center out of range");
  std::vector<Tensor> ts = psi.tensors();

  for (long i = 0; i < center; ++i) {
    Tensor& a = ts[static_cast<std::size_t>(i)];
    const long l = a.dim(0), p = a.dim(1);
    MatrixXcd q, rm;
    thin_qr(a.matrix_view(l * p), q, rm);
    const long k = q.cols();
    Tensor qa({l, p, k});
    Eigen::Map<RowMatrixXcd>(qa.data(), l * p, k) = q;
    a = std::move(qa);
    Tensor& b = ts[static_cast<std::size_t>(i + 1)];
    Tensor carry = Tensor::from_matrix(rm);
    b = contract(carry, b, {{1, 0}});
  }
  for (long i = n - 1; i > center; --i) {
    Tensor& a = ts[static_cast<std::size_t>(i)];
    const long l = a.dim(0), p = a.dim(1), r = a.dim(2);
    // right isometry from QR of the adjoint
    MatrixXcd m = a.matrix_view(l);  // l x (p r)
    MatrixXcd q, rm;
    thin_qr(m.adjoint(), q, rm);
    const long k = q.cols();
    Tensor qa({k, p, r});
    Eigen::Map<RowMatrixXcd>(qa.data(), k, p * r) = q.adjoint();
    a = std::move(qa);
    Tensor& b = ts[static_cast<std::size_t>(i - 1)];
    Tensor carry = Tensor::from_matrix(MatrixXcd(rm.adjoint()));  // l x k
    b = contract(b, carry, {{2, 0}});
  }
  return Mps(psi.local_dim(), std::move(ts), center);
}

Complex overlap(const Mps& a, const Mps& b) {
  if (a.n_sites() != b.n_sites() || a.local_dim() != b.local_dim())
    throw ShapeError("overlap shape mismatch");
  Tensor env({1, 1});
  env({0, 0}) = 1.0;
  for (long i = 0; i < a.n_sites(); ++i) {
    Tensor t = contract(env, b.site(i), {{1, 0}});        // (ab, p, rb)
    env = contract(a.site(i).conjugated(), t, {{0, 0}, {1, 1}});  // (ra', rb)
  }
  return env({0, 0});
}

double norm(const Mps& psi) {
  return std::sqrt(std::abs(overlap(psi, psi)));
}

std::pair<Mps, double> compress(const Mps& psi, long max_bond, double cutoff) {
  if (max_bond < 1) throw ShapeError("max_bond must be positive");
  const long n = psi.n_sites();
  Mps work = canonicalize(psi, n - 1);
  std::vector<Tensor> ts = work.tensors();
  double discarded_total = 0;

  for (long i = n - 1; i > 0; --i) {
    Tensor& a = ts[static_cast<std::size_t>(i)];
    auto split = svd_split(a, {0}, max_bond, cutoff);
    const double kept = split.s.squaredNorm();
    if (kept + split.discarded_weight > 0)
      discarded_total += split.discarded_weight / (kept + split.discarded_weight);
    a = split.v;  // (k, p, r)
    MatrixXcd us = split.u.matrix_view(split.u.dim(0));
    us = us * split.s.asDiagonal();
    Tensor carry = Tensor::from_matrix(us);  // (l, k)
    Tensor& b = ts[static_cast<std::size_t>(i - 1)];
    b = contract(b, carry, {{2, 0}});
  }
  return {Mps(psi.local_dim(), std::move(ts), 0), discarded_total};
}

Mps trace_vector(long n_sites, long phys_dim) {
  if (n_sites < 1) throw ShapeError("need at least one site");
  const long d2 = phys_dim * phys_dim;
  VectorXcd v = VectorXcd::Zero(d2);
  for (long s = 0; s < phys_dim; ++s) v[s * phys_dim + s] = 1.0;
  return Mps::product_state(n_sites, d2,
                            std::vector<VectorXcd>(static_cast<std::size_t>(n_sites), v));
}

Mps mps_add(const Mps& a, const Mps& b, Complex ca, Complex cb) {
  if (a.n_sites() != b.n_sites() || a.local_dim() != b.local_dim())
    throw ShapeError("sum shape mismatch");
  const long n = a.n_sites(), p = a.local_dim();
  std::vector<Tensor> ts;
  for (long i = 0; i < n; ++i) {
    const Tensor& ta = a.site(i);
    const Tensor& tb = b.site(i);
    const long la = ta.dim(0), ra = ta.dim(2);
    const long lb = tb.dim(0), rb = tb.dim(2);
    const long l = (i == 0) ? 1 : la + lb;
    const long r = (i == n - 1) ? 1 : ra + rb;
    Tensor t({l, p, r});
    const Complex fa = (i == 0) ? ca : Complex(1, 0);
    const Complex fb = (i == 0) ? cb : Complex(1, 0);
    for (long x = 0; x < la; ++x)
      for (long q = 0; q < p; ++q)
        for (long y = 0; y < ra; ++y)
          t({i == 0 ? 0 : x, q, i == n - 1 ? 0 : y}) += fa * ta({x, q, y});
    for (long x = 0; x < lb; ++x)
      for (long q = 0; q < p; ++q)
        for (long y = 0; y < rb; ++y)
          t({i == 0 ? 0 : la + x, q, i == n - 1 ? 0 : ra + y}) +=
              fb * tb({x, q, y});
    ts.push_back(std::move(t));
  }
  return Mps(p, std::move(ts));
}

Mps mps_adjoint(const Mps& psi) {
  const long d2 = psi.local_dim();
  const long d = static_cast<long>(std::llround(std::sqrt(static_cast<double>(d2))));
  if (d * d != d2) throw ShapeError("local dimension is not a perfect square");
  std::vector<Tensor> ts;
  for (long i = 0; i < psi.n_sites(); ++i) {
    const Tensor& a = psi.site(i);
    Tensor t({a.dim(0), d2, a.dim(2)});
    for (long l = 0; l < a.dim(0); ++l)
      for (long s = 0; s < d; ++s)
        for (long r = 0; r < d; ++r)
          for (long x = 0; x < a.dim(2); ++x)
            t({l, r * d + s, x}) = std::conj(a({l, s * d + r, x}));
    ts.push_back(std::move(t));
  }
  return Mps(d2, std::move(ts), psi.gauge_center());
}

Mps mps_scaled(const Mps& psi, Complex factor) {
  std::vector<Tensor> ts = psi.tensors();
  ts[0] = ts[0].scaled(factor);
  return Mps(psi.local_dim(), std::move(ts), psi.gauge_center());
}

VectorXcd expand_mps(const Mps& psi) {
  Tensor acc = psi.site(0);  // (1, p..., r)
  for (long i = 1; i < psi.n_sites(); ++i) {
    // acc: (1, P, r); contract bond with next site
    acc = contract(acc, psi.site(i), {{2, 0}});  // (1, P, p, r)
    acc = acc.reshaped({1, acc.dim(1) * acc.dim(2), acc.dim(3)});
  }
  const long total = acc.dim(1);
  VectorXcd v(total);
  for (long k = 0; k < total; ++k) v[k] = acc({0, k, 0});
  return v;
}

}  // namespace steadymps
