#include "steadymps/model_spec.hpp"

#include <algorithm>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

namespace steadymps {

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd sigma_plus() {
  Eigen::Matrix2cd m;
  m << 0, 1, 0, 0;
  return m;
}

Eigen::Matrix2cd sigma_minus() {
  Eigen::Matrix2cd m;
  m << 0, 0, 1, 0;
  return m;
}

Eigen::Matrix2cd identity2() { return Eigen::Matrix2cd::Identity(); }

namespace {

void validate_term(const LocalTerm& term, long n_sites, long phys_dim) {
  if (term.sites.empty() || term.sites.size() > 2)
    throw ModelError("terms must act on one or two sites");
  for (long s : term.sites)
    if (s < 0 || s >= n_sites) throw ModelError("term site out of range");
  if (term.sites.size() == 2 && term.sites[1] != term.sites[0] + 1)
    throw ModelError("two-site terms must act on adjacent sites");
  long dim = 1;
  for (std::size_t k = 0; k < term.sites.size(); ++k) dim *= phys_dim;
  if (term.op.rows() != dim || term.op.cols() != dim)
    throw ModelError("term operator dimension mismatch");
}

}  // namespace

std::vector<long> JumpOperator::support() const {
  std::set<long> sites;
  for (const auto& p : pieces)
    for (long s : p.sites) sites.insert(s);
  return {sites.begin(), sites.end()};
}

MatrixXcd JumpOperator::dense_on_support(long phys_dim) const {
  const auto sup = support();
  if (sup.empty()) throw ModelError("empty jump operator");
  if (sup.size() > 2 || (sup.size() == 2 && sup[1] != sup[0] + 1))
    throw ModelError("jump operator support must span at most two adjacent sites");
  const long dim = sup.size() == 1 ? phys_dim : phys_dim * phys_dim;
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  const MatrixXcd id = MatrixXcd::Identity(phys_dim, phys_dim);
  for (const auto& p : pieces) {
    MatrixXcd embedded;
    if (p.sites.size() == static_cast<std::size_t>(sup.size())) {
      embedded = p.op;
    } else if (p.sites[0] == sup[0]) {
      embedded = Eigen::kroneckerProduct(p.op, id).eval();
    } else {
      embedded = Eigen::kroneckerProduct(id, p.op).eval();
    }
    out += p.coefficient * embedded;
  }
  return out;
}

void validate(const ModelSpec& model) {
  if (model.n_sites < 1) throw ModelError("need at least one site");
  if (model.phys_dim < 2) throw ModelError("physical dimension must be >= 2");
  for (const auto& t : model.hamiltonian)
    validate_term(t, model.n_sites, model.phys_dim);
  for (const auto& jump : model.lindblad_ops) {
    if (jump.pieces.empty()) throw ModelError("empty jump operator");
    for (const auto& p : jump.pieces)
      validate_term(p, model.n_sites, model.phys_dim);
    jump.dense_on_support(model.phys_dim);  // validates the joint support
  }
}

}  // namespace steadymps
