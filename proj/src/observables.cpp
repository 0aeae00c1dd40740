#include "steadymps/observables.hpp"

#include <cmath>

#include "steadymps/model_spec.hpp"

namespace steadymps {

namespace {

Eigen::Matrix2cd axis_matrix(char axis) {
  switch (axis) {
    case 'x':
      return pauli_x();
    case 'y':
      return pauli_y();
    case 'z':
      return pauli_z();
    default:
      throw ShapeError(std::string("unknown axis: ") + axis);
  }
}

// Transfer matrix of site tensor A against the trace functional weighted by
// a local operator o: out(l, r) = sum_{s,r'} o(r', s) A[l, s*d + r', r].
// With o = identity this implements the plain trace map.
MatrixXcd site_transfer(const Tensor& a, const Eigen::Matrix2cd& o) {
  const long l = a.dim(0), p = a.dim(1), r = a.dim(2);
  const long d = static_cast<long>(std::llround(std::sqrt(double(p))));
  MatrixXcd out = MatrixXcd::Zero(l, r);
  for (long s = 0; s < d; ++s)
    for (long rr = 0; rr < d; ++rr) {
      const Complex w = o(rr, s);
      if (w == Complex(0, 0)) continue;
      for (long x = 0; x < l; ++x)
        for (long y = 0; y < r; ++y) out(x, y) += w * a({x, s * d + rr, y});
    }
  return out;
}

struct TransferCache {
  std::vector<MatrixXcd> trace;           // per-site trace transfer
  std::vector<Eigen::RowVectorXcd> left;  // partial products of sites < i
  std::vector<VectorXcd> right;           // partial products of sites > i
};

TransferCache build_cache(const Mps& rho) {
  const long n = rho.n_sites();
  TransferCache c;
  c.trace.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    c.trace.push_back(site_transfer(rho.site(i), identity2()));
  c.left.resize(static_cast<std::size_t>(n + 1));
  c.right.resize(static_cast<std::size_t>(n + 1));
  c.left[0] = Eigen::RowVectorXcd::Ones(1);
  for (long i = 0; i < n; ++i)
    c.left[static_cast<std::size_t>(i + 1)] =
        c.left[static_cast<std::size_t>(i)] * c.trace[static_cast<std::size_t>(i)];
  c.right[static_cast<std::size_t>(n)] = VectorXcd::Ones(1);
  for (long i = n - 1; i >= 0; --i)
    c.right[static_cast<std::size_t>(i)] =
        c.trace[static_cast<std::size_t>(i)] * c.right[static_cast<std::size_t>(i + 1)];
  return c;
}

}  // namespace

double local_pauli(const Mps& rho, long site, char axis) {
  if (site < 0 || site >= rho.n_sites()) throw ShapeError("site out of range");
  const TransferCache c = build_cache(rho);
  const MatrixXcd t = site_transfer(rho.site(site), axis_matrix(axis));
  const Complex v = c.left[static_cast<std::size_t>(site)] * t *
                    c.right[static_cast<std::size_t>(site + 1)];
  return v.real();
}

VectorXd pauli_profile(const Mps& rho, char axis) {
  const long n = rho.n_sites();
  const TransferCache c = build_cache(rho);
  const Eigen::Matrix2cd op = axis_matrix(axis);
  VectorXd out(n);
  for (long i = 0; i < n; ++i) {
    const MatrixXcd t = site_transfer(rho.site(i), op);
    const Complex v = c.left[static_cast<std::size_t>(i)] * t *
                      c.right[static_cast<std::size_t>(i + 1)];
    out[i] = v.real();
  }
  return out;
}

Eigen::MatrixXd two_point_table(const Mps& rho, char axis) {
  const long n = rho.n_sites();
  const TransferCache c = build_cache(rho);
  const Eigen::Matrix2cd op = axis_matrix(axis);
  std::vector<MatrixXcd> st;
  st.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) st.push_back(site_transfer(rho.site(i), op));

  Eigen::MatrixXd table = Eigen::MatrixXd::Identity(n, n);
  for (long i = 0; i < n; ++i) {
    Eigen::RowVectorXcd env = c.left[static_cast<std::size_t>(i)] *
                              st[static_cast<std::size_t>(i)];
    for (long j = i + 1; j < n; ++j) {
      const Complex v = env * st[static_cast<std::size_t>(j)] *
                        c.right[static_cast<std::size_t>(j + 1)];
      table(i, j) = v.real();
      table(j, i) = v.real();
      env = env * c.trace[static_cast<std::size_t>(j)];
    }
  }
  return table;
}

double staggered_mz_sq(const Mps& rho) {
  const long n = rho.n_sites();
  const Eigen::MatrixXd zz = two_point_table(rho, 'z');
  double acc = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      acc += ((i + j) % 2 == 0 ? 1.0 : -1.0) * zz(i, j);
  return acc / static_cast<double>(n * n);
}

double collective_spin_sq(const Mps& rho, char axis, SpinNormalization norm) {
  const long n = rho.n_sites();
  const Eigen::MatrixXd t = two_point_table(rho, axis);
  const double total = t.sum();
  return norm == SpinNormalization::PerSite
             ? total / static_cast<double>(n * n)
             : total;
}

double connected_zz(const Mps& rho, long ref_site, long distance) {
  const long other = ref_site + distance;
  if (ref_site < 0 || ref_site >= rho.n_sites() || other < 0 ||
      other >= rho.n_sites())
    throw ShapeError("correlator sites out of range");
  if (distance == 0) return 1.0 - std::pow(local_pauli(rho, ref_site, 'z'), 2);
  const TransferCache c = build_cache(rho);
  const MatrixXcd ta = site_transfer(rho.site(ref_site), pauli_z());
  const MatrixXcd tb = site_transfer(rho.site(other), pauli_z());
  const long lo = std::min(ref_site, other), hi = std::max(ref_site, other);
  Eigen::RowVectorXcd env =
      c.left[static_cast<std::size_t>(lo)] * (lo == ref_site ? ta : tb);
  for (long j = lo + 1; j < hi; ++j)
    env = env * c.trace[static_cast<std::size_t>(j)];
  const Complex both =
      env * (hi == ref_site ? ta : tb) * c.right[static_cast<std::size_t>(hi + 1)];
  const Complex a = c.left[static_cast<std::size_t>(ref_site)] * ta *
                    c.right[static_cast<std::size_t>(ref_site + 1)];
  const Complex b = c.left[static_cast<std::size_t>(other)] * tb *
                    c.right[static_cast<std::size_t>(other + 1)];
  return both.real() - a.real() * b.real();
}

double purity(const Mps& rho) { return std::abs(overlap(rho, rho)); }

}  // namespace steadymps
