#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace steadymps {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;
// Row-major map matching the canonical tensor linearization.
using RowMatrixXcd =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SplitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense complex tensor with ordered indices. Entries are stored row-major
/// over the declared index order; every module relies on this layout.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<long> dims);
  Tensor(std::vector<long> dims, std::vector<Complex> data);

  static Tensor from_matrix(const MatrixXcd& m);
  static Tensor from_vector(const VectorXcd& v);

  long rank() const { return static_cast<long>(dims_.size()); }
  long dim(long k) const { return dims_.at(static_cast<std::size_t>(k)); }
  const std::vector<long>& dims() const { return dims_; }
  long size() const { return static_cast<long>(data_.size()); }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }
  const std::vector<Complex>& storage() const { return data_; }

  Complex& operator()(std::initializer_list<long> idx) {
    return data_[offset(idx)];
  }
  const Complex& operator()(std::initializer_list<long> idx) const {
    return data_[offset(idx)];
  }

  /// Same data, new index grouping. product(new_dims) must match size().
  Tensor reshaped(std::vector<long> new_dims) const;
  /// Index permutation: out index k is input index perm[k].
  Tensor permuted(const std::vector<long>& perm) const;
  Tensor conjugated() const;
  Tensor scaled(Complex factor) const;

  double norm() const;
  double max_abs() const;

  /// View as a rows x cols row-major matrix; rows must divide size().
  Eigen::Map<const RowMatrixXcd> matrix_view(long rows) const;
  Eigen::Map<RowMatrixXcd> matrix_view(long rows);

 private:
  std::size_t offset(std::initializer_list<long> idx) const;

  std::vector<long> dims_;
  std::vector<Complex> data_;
};

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);

/// Pairwise contraction. Result carries the unpaired indices of `a` (original
/// order) followed by those of `b`.
Tensor contract(const Tensor& a, const Tensor& b,
                const std::vector<std::pair<long, long>>& pairs);

struct SvdSplitResult {
  Tensor u;                 // (left dims..., bond), isometric columns
  Eigen::VectorXd s;        // descending
  Tensor v;                 // (bond, right dims...), isometric rows
  double discarded_weight;  // sum of squared dropped singular values
};

/// Split by SVD across the bipartition given by `left_indices` (positions
/// into t's index list). `cutoff` bounds the relative discarded weight:
/// the dropped tail satisfies sum(dropped s^2) <= cutoff * sum(all s^2).
SvdSplitResult svd_split(const Tensor& t, const std::vector<long>& left_indices,
                         long max_rank, double cutoff);

}  // namespace steadymps
