#include "steadymps/eigen_solver.hpp"

#include <algorithm>
#include <cmath>

namespace steadymps {

namespace {

void project_out(const std::vector<VectorXcd>& basis, VectorXcd& v) {
  for (const auto& b : basis) v -= b * b.dot(v);
}

VectorXcd random_direction(long n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  VectorXcd v(n);
  for (long i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  return v;
}

EigenPair dense_smallest(const LinearMap& op,
                         const std::vector<VectorXcd>* deflate, long applies) {
  MatrixXcd m = materialize(op);
  m = ((m + m.adjoint()) / 2.0).eval();
  if (deflate != nullptr && !deflate->empty()) {
    // push deflated directions to the top of the spectrum
    double shift = m.norm() + 1.0;
    for (const auto& d : *deflate) m += shift * (d * d.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  EigenPair out;
  out.value = es.eigenvalues()[0];
  out.vector = es.eigenvectors().col(0);
  out.applies = applies + op.dimension;
  VectorXcd r(op.dimension);
  op.apply(out.vector, r);
  out.residual_norm = (r - out.value * out.vector).norm();
  return out;
}

}  // namespace

MatrixXcd materialize(const LinearMap& op) {
  const long n = op.dimension;
  MatrixXcd m(n, n);
  VectorXcd e = VectorXcd::Zero(n), col(n);
  for (long j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

EigenPair smallest_eigenpair(const LinearMap& op, const VectorXcd& guess,
                             double tol, long max_iter,
                             const EigenSolveOptions& opts) {
  const long n = op.dimension;
  if (guess.size() != n) throw ShapeError("eigensolver guess dimension mismatch");
  if (guess.norm() == 0) throw ShapeError("eigensolver guess must be nonzero");

  std::mt19937_64 fallback_rng(0x5eadbeefULL);
  std::mt19937_64& rng = opts.rng != nullptr ? *opts.rng : fallback_rng;

  VectorXcd x0 = guess;
  if (opts.deflate != nullptr) project_out(*opts.deflate, x0);
  if (x0.norm() < 1e-14 * guess.norm()) {
    x0 = random_direction(n, rng);
    if (opts.deflate != nullptr) project_out(*opts.deflate, x0);
  }
  x0.normalize();

  const long m_max = std::max<long>(4, std::min<long>(opts.max_subspace, n));
  std::vector<VectorXcd> V, W;
  V.reserve(static_cast<std::size_t>(m_max));
  W.reserve(static_cast<std::size_t>(m_max));

  long applies = 0;
  auto apply_counted = [&](const VectorXcd& x) {
    VectorXcd y(n);
    op.apply(x, y);
    ++applies;
    return y;
  };

  V.push_back(x0);
  W.push_back(apply_counted(x0));

  double best_value = std::numeric_limits<double>::infinity();
  double best_res = std::numeric_limits<double>::infinity();
  VectorXcd best_vec = x0;

  while (true) {
    const long m = static_cast<long>(V.size());
    MatrixXcd g(m, m);
    for (long i = 0; i < m; ++i)
      for (long j = 0; j < m; ++j)
        g(i, j) = V[static_cast<std::size_t>(i)].dot(W[static_cast<std::size_t>(j)]);
    g = ((g + g.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g);

    const double theta = es.eigenvalues()[0];
    VectorXcd y = es.eigenvectors().col(0);
    VectorXcd x = VectorXcd::Zero(n), wx = VectorXcd::Zero(n);
    for (long i = 0; i < m; ++i) {
      x += y[i] * V[static_cast<std::size_t>(i)];
      wx += y[i] * W[static_cast<std::size_t>(i)];
    }
    x.normalize();
    VectorXcd r = wx - theta * x;
    const double res = r.norm();

    if (res < best_res) {
      best_res = res;
      best_value = theta;
      best_vec = x;
    }
    if (res <= tol)
      return {theta, x, res, applies};
    if (applies >= max_iter) {
      if (n <= std::min<long>(opts.dense_fallback_dim, 4096))
        return dense_smallest(op, opts.deflate, applies);
      throw IterationLimitError("eigensolver did not reach tolerance " +
                                    std::to_string(tol) + " within " +
                                    std::to_string(max_iter) + " applications",
                                best_value, best_vec, best_res);
    }

    VectorXcd t = r;
    if (op.diagonal.has_value()) {
      const VectorXd& d = *op.diagonal;
      const double floor = std::max(1e-10, 1e-10 * std::abs(theta));
      for (long i = 0; i < n; ++i) {
        double den = d[i] - theta;
        if (std::abs(den) < floor) den = den >= 0 ? floor : -floor;
        t[i] /= den;
      }
    }
    if (opts.deflate != nullptr) project_out(*opts.deflate, t);
    // Gram-Schmidt against the subspace, twice for stability
    for (int pass = 0; pass < 2; ++pass) project_out(V, t);
    double tn = t.norm();
    if (tn < 1e-12) {
      t = random_direction(n, rng);
      if (opts.deflate != nullptr) project_out(*opts.deflate, t);
      for (int pass = 0; pass < 2; ++pass) project_out(V, t);
      tn = t.norm();
      if (tn < 1e-12) {
        // subspace exhausted the reachable space
        return {theta, x, res, applies};
      }
    }
    t /= tn;

    if (m >= m_max) {
      // restart from the two best Ritz vectors
      VectorXcd x2 = VectorXcd::Zero(n);
      if (m >= 2) {
        VectorXcd y2 = es.eigenvectors().col(1);
        for (long i = 0; i < m; ++i) x2 += y2[i] * V[static_cast<std::size_t>(i)];
      }
      V.clear();
      W.clear();
      V.push_back(x);
      W.push_back(apply_counted(x));
      if (x2.norm() > 1e-12) {
        project_out(V, x2);
        if (x2.norm() > 1e-12) {
          x2.normalize();
          V.push_back(x2);
          W.push_back(apply_counted(x2));
        }
      }
      project_out(V, t);
      if (t.norm() < 1e-12) continue;
      t.normalize();
    }
    V.push_back(t);
    W.push_back(apply_counted(t));
  }
}

}  // namespace steadymps
