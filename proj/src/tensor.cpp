#include "steadymps/tensor.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SVD>

namespace steadymps {

namespace {

long product(const std::vector<long>& dims) {
  long p = 1;
  for (long d : dims) {
    if (d <= 0) throw ShapeError("tensor dimensions must be positive");
    p *= d;
  }
  return p;
}

std::vector<long> row_major_strides(const std::vector<long>& dims) {
  std::vector<long> strides(dims.size(), 1);
  for (long k = static_cast<long>(dims.size()) - 2; k >= 0; --k)
    strides[k] = strides[k + 1] * dims[k + 1];
  return strides;
}

}  // namespace

Tensor::Tensor(std::vector<long> dims)
    : dims_(std::move(dims)), data_(static_cast<std::size_t>(product(dims_))) {}

Tensor::Tensor(std::vector<long> dims, std::vector<Complex> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (product(dims_) != static_cast<long>(data_.size()))
    throw ShapeError("tensor data size does not match dimensions");
}

Tensor Tensor::from_matrix(const MatrixXcd& m) {
  Tensor t({m.rows(), m.cols()});
  Eigen::Map<RowMatrixXcd>(t.data(), m.rows(), m.cols()) = m;
  return t;
}

Tensor Tensor::from_vector(const VectorXcd& v) {
  Tensor t({v.size()});
  Eigen::Map<VectorXcd>(t.data(), v.size()) = v;
  return t;
}

std::size_t Tensor::offset(std::initializer_list<long> idx) const {
  if (static_cast<long>(idx.size()) != rank())
    throw ShapeError("index rank mismatch");
  std::size_t off = 0;
  long k = 0;
  for (long i : idx) {
    if (i < 0 || i >= dims_[static_cast<std::size_t>(k)])
      throw ShapeError("index out of range");
    off = off * static_cast<std::size_t>(dims_[static_cast<std::size_t>(k)]) +
          static_cast<std::size_t>(i);
    ++k;
  }
  return off;
}

Tensor Tensor::reshaped(std::vector<long> new_dims) const {
  if (product(new_dims) != size())
    throw ShapeError("reshape must preserve the number of entries");
  Tensor t;
  t.dims_ = std::move(new_dims);
  t.data_ = data_;
  return t;
}

Tensor Tensor::permuted(const std::vector<long>& perm) const {
  const long r = rank();
  if (static_cast<long>(perm.size()) != r)
    throw ShapeError("permutation rank mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  std::vector<long> out_dims(static_cast<std::size_t>(r));
  for (long k = 0; k < r; ++k) {
    long p = perm[static_cast<std::size_t>(k)];
    if (p < 0 || p >= r || seen[static_cast<std::size_t>(p)])
      throw ShapeError("invalid permutation");
    seen[static_cast<std::size_t>(p)] = true;
    out_dims[static_cast<std::size_t>(k)] = dims_[static_cast<std::size_t>(p)];
  }
  Tensor out(out_dims);
  if (size() == 0) return out;

  const auto in_strides = row_major_strides(dims_);
  // stride in the input for each output index
  std::vector<long> gather(static_cast<std::size_t>(r));
  for (long k = 0; k < r; ++k)
    gather[static_cast<std::size_t>(k)] =
        in_strides[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];

  std::vector<long> counter(static_cast<std::size_t>(r), 0);
  long in_off = 0;
  const long total = size();
  for (long lin = 0; lin < total; ++lin) {
    out.data_[static_cast<std::size_t>(lin)] =
        data_[static_cast<std::size_t>(in_off)];
    for (long k = r - 1; k >= 0; --k) {
      auto ks = static_cast<std::size_t>(k);
      if (++counter[ks] < out_dims[ks]) {
        in_off += gather[ks];
        break;
      }
      counter[ks] = 0;
      in_off -= gather[ks] * (out_dims[ks] - 1);
    }
  }
  return out;
}

Tensor Tensor::conjugated() const {
  Tensor t = *this;
  for (auto& z : t.data_) z = std::conj(z);
  return t;
}

Tensor Tensor::scaled(Complex factor) const {
  Tensor t = *this;
  for (auto& z : t.data_) z *= factor;
  return t;
}

double Tensor::norm() const {
  return Eigen::Map<const VectorXcd>(data_.data(),
                                     static_cast<long>(data_.size()))
      .norm();
}

double Tensor::max_abs() const {
  double m = 0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

Eigen::Map<const RowMatrixXcd> Tensor::matrix_view(long rows) const {
  if (rows <= 0 || size() % rows != 0)
    throw ShapeError("matrix view rows must divide tensor size");
  return {data_.data(), rows, size() / rows};
}

Eigen::Map<RowMatrixXcd> Tensor::matrix_view(long rows) {
  if (rows <= 0 || size() % rows != 0)
    throw ShapeError("matrix view rows must divide tensor size");
  return {data_.data(), rows, size() / rows};
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  if (a.dims() != b.dims()) throw ShapeError("tensor sum shape mismatch");
  Tensor out = a;
  for (long i = 0; i < out.size(); ++i)
    out.data()[i] += b.data()[i];
  return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  return a + b.scaled(Complex(-1, 0));
}

Tensor contract(const Tensor& a, const Tensor& b,
                const std::vector<std::pair<long, long>>& pairs) {
  const long ra = a.rank(), rb = b.rank();
  std::vector<bool> a_paired(static_cast<std::size_t>(ra), false);
  std::vector<bool> b_paired(static_cast<std::size_t>(rb), false);
  for (const auto& [ia, ib] : pairs) {
    if (ia < 0 || ia >= ra || ib < 0 || ib >= rb)
      throw ShapeError("contraction index out of range");
    if (a_paired[static_cast<std::size_t>(ia)] ||
        b_paired[static_cast<std::size_t>(ib)])
      throw ShapeError("index paired twice");
    if (a.dim(ia) != b.dim(ib))
      throw ShapeError("contraction extent mismatch: a[" +
                       std::to_string(ia) + "]=" + std::to_string(a.dim(ia)) +
                       " vs b[" + std::to_string(ib) +
                       "]=" + std::to_string(b.dim(ib)));
    a_paired[static_cast<std::size_t>(ia)] = true;
    b_paired[static_cast<std::size_t>(ib)] = true;
  }

  std::vector<long> perm_a, perm_b, out_dims;
  for (long k = 0; k < ra; ++k)
    if (!a_paired[static_cast<std::size_t>(k)]) {
      perm_a.push_back(k);
      out_dims.push_back(a.dim(k));
    }
  long k_dim = 1;
  for (const auto& [ia, ib] : pairs) {
    perm_a.push_back(ia);
    perm_b.push_back(ib);
    k_dim *= a.dim(ia);
  }
  for (long k = 0; k < rb; ++k)
    if (!b_paired[static_cast<std::size_t>(k)]) {
      perm_b.push_back(k);
      out_dims.push_back(b.dim(k));
    }

  const Tensor ap = a.permuted(perm_a);
  const Tensor bp = b.permuted(perm_b);
  const long m = ap.size() / k_dim;
  const long n = bp.size() / k_dim;

  Tensor out(out_dims.empty() ? std::vector<long>{1} : out_dims);
  Eigen::Map<RowMatrixXcd>(out.data(), m, n).noalias() =
      ap.matrix_view(m) * bp.matrix_view(k_dim);
  if (out_dims.empty()) out = out.reshaped({1});
  return out;
}

SvdSplitResult svd_split(const Tensor& t, const std::vector<long>& left_indices,
                         long max_rank, double cutoff) {
  const long r = t.rank();
  if (left_indices.empty() || static_cast<long>(left_indices.size()) >= r)
    throw SplitError("left index set must be a nonempty proper subset");
  if (max_rank < 1) throw SplitError("max_rank must be positive");

  std::vector<bool> is_left(static_cast<std::size_t>(r), false);
  for (long k : left_indices) {
    if (k < 0 || k >= r || is_left[static_cast<std::size_t>(k)])
      throw SplitError("invalid left index set");
    is_left[static_cast<std::size_t>(k)] = true;
  }

  std::vector<long> perm, left_dims, right_dims;
  for (long k = 0; k < r; ++k)
    if (is_left[static_cast<std::size_t>(k)]) {
      perm.push_back(k);
      left_dims.push_back(t.dim(k));
    }
  for (long k = 0; k < r; ++k)
    if (!is_left[static_cast<std::size_t>(k)]) {
      perm.push_back(k);
      right_dims.push_back(t.dim(k));
    }

  const Tensor tp = t.permuted(perm);
  long rows = 1;
  for (long d : left_dims) rows *= d;
  MatrixXcd m = tp.matrix_view(rows);

  Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const long full = sv.size();

  double total_w = sv.squaredNorm();
  long keep = std::min<long>(full, max_rank);
  // shrink further while the dropped tail stays within the relative cutoff
  if (cutoff > 0 && total_w > 0) {
    double dropped = 0;
    for (long k = full - 1; k >= keep; --k) dropped += sv[k] * sv[k];
    while (keep > 1 && dropped + sv[keep - 1] * sv[keep - 1] <=
                           cutoff * total_w) {
      dropped += sv[keep - 1] * sv[keep - 1];
      --keep;
    }
  }
  keep = std::max<long>(keep, 1);

  double discarded = 0;
  for (long k = keep; k < full; ++k) discarded += sv[k] * sv[k];

  SvdSplitResult out;
  out.s = sv.head(keep);
  out.discarded_weight = discarded;

  left_dims.push_back(keep);
  out.u = Tensor(left_dims);
  Eigen::Map<RowMatrixXcd>(out.u.data(), rows, keep) = svd.matrixU().leftCols(keep);

  std::vector<long> vdims{keep};
  for (long d : right_dims) vdims.push_back(d);
  out.v = Tensor(vdims);
  Eigen::Map<RowMatrixXcd>(out.v.data(), keep, m.cols()) =
      svd.matrixV().leftCols(keep).adjoint();
  return out;
}

}  // namespace steadymps
