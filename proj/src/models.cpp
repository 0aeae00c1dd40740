#include "steadymps/models.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace steadymps {

namespace {

LocalTerm on_site(long i, const Eigen::Matrix2cd& op, double coeff) {
  return LocalTerm{{i}, op, Complex(coeff, 0)};
}

LocalTerm two_site(long i, const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b,
                   double coeff) {
  return LocalTerm{{i, i + 1}, Eigen::kroneckerProduct(a, b).eval(),
                   Complex(coeff, 0)};
}

double require(const std::map<std::string, double>& params,
               const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ModelError("missing model parameter: " + key);
  return it->second;
}

}  // namespace

ModelSpec dicke_low_dim(const DickeParams& p) {
  if (p.n_sites < 2) throw ModelError("dicke model needs at least two sites");
  if (p.gamma < 0) throw ModelError("gamma must be nonnegative");
  ModelSpec m;
  m.n_sites = p.n_sites;
  m.model_id = "dicke";
  m.parameters = {{"g", p.g}, {"gamma", p.gamma}};
  m.order_param_id = "sy2";
  for (long i = 0; i < p.n_sites; ++i)
    m.hamiltonian.push_back(on_site(i, pauli_x(), p.g));
  for (long i = 0; i + 1 < p.n_sites; ++i) {
    JumpOperator jump;
    jump.pieces.push_back(on_site(i, sigma_minus(), p.gamma));
    jump.pieces.push_back(on_site(i + 1, sigma_minus(), p.gamma));
    m.lindblad_ops.push_back(std::move(jump));
  }
  validate(m);
  return m;
}

ModelSpec ising_local(const IsingLocalParams& p) {
  if (p.n_sites < 2) throw ModelError("ising model needs at least two sites");
  if (p.gamma < 0) throw ModelError("gamma must be nonnegative");
  ModelSpec m;
  m.n_sites = p.n_sites;
  m.model_id = "ising-local";
  m.parameters = {
      {"V", p.V}, {"Omega", p.Omega}, {"Delta", p.Delta}, {"gamma", p.gamma}};
  m.order_param_id = "mz2";
  for (long i = 0; i + 1 < p.n_sites; ++i)
    m.hamiltonian.push_back(two_site(i, pauli_z(), pauli_z(), p.V / 4));
  for (long i = 0; i < p.n_sites; ++i) {
    m.hamiltonian.push_back(on_site(i, pauli_x(), p.Omega / 2));
    m.hamiltonian.push_back(on_site(i, pauli_z(), -(p.V - p.Delta) / 2));
  }
  // boundary field
  m.hamiltonian.push_back(on_site(0, pauli_z(), p.V / 4));
  m.hamiltonian.push_back(on_site(p.n_sites - 1, pauli_z(), p.V / 4));
  const double amp = std::sqrt(p.gamma);
  for (long i = 0; i < p.n_sites; ++i) {
    JumpOperator jump;
    jump.pieces.push_back(on_site(i, sigma_plus(), amp));
    m.lindblad_ops.push_back(std::move(jump));
  }
  validate(m);
  return m;
}

ModelSpec ising_coherent(const IsingCoherentParams& p) {
  if (p.n_sites < 2) throw ModelError("ising model needs at least two sites");
  ModelSpec m;
  m.n_sites = p.n_sites;
  m.model_id = "ising-coherent";
  m.parameters = {{"g", p.g}, {"mu", p.mu}, {"nu", p.nu}};
  m.order_param_id = "sz2";
  for (long i = 0; i + 1 < p.n_sites; ++i)
    m.hamiltonian.push_back(two_site(i, pauli_x(), pauli_x(), 1.0));
  for (long i = 0; i < p.n_sites; ++i)
    m.hamiltonian.push_back(on_site(i, pauli_z(), p.g));
  for (long i = 0; i + 1 < p.n_sites; ++i) {
    JumpOperator jump;
    jump.pieces.push_back(on_site(i, sigma_plus(), p.mu));
    jump.pieces.push_back(on_site(i + 1, sigma_minus(), p.nu));
    m.lindblad_ops.push_back(std::move(jump));
  }
  JumpOperator boundary;
  boundary.pieces.push_back(on_site(p.n_sites - 1, sigma_plus(), p.mu));
  m.lindblad_ops.push_back(std::move(boundary));
  validate(m);
  return m;
}

ModelSpec make_model(const std::string& model_id, long n_sites,
                     const std::map<std::string, double>& params) {
  if (model_id == "dicke")
    return dicke_low_dim(
        {n_sites, require(params, "g"), require(params, "gamma")});
  if (model_id == "ising-local")
    return ising_local({n_sites, require(params, "V"), require(params, "Omega"),
                        require(params, "Delta"), require(params, "gamma")});
  if (model_id == "ising-coherent")
    return ising_coherent({n_sites, require(params, "g"), require(params, "mu"),
                           require(params, "nu")});
  throw ModelError("unknown model id: " + model_id);
}

}  // namespace steadymps
