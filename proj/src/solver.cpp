#include "steadymps/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <Eigen/QR>

#include "steadymps/eigen_solver.hpp"
#include "steadymps/lindbladian.hpp"
#include "steadymps/serialize.hpp"

namespace steadymps {

namespace {

constexpr double kMpoCompressCutoff = 1e-28;  // relative discarded weight
constexpr double kWarmupRoundTol = 1e-13;
constexpr long kWarmupMaxRounds = 200;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

VectorXcd tensor_as_vector(const Tensor& t) {
  return Eigen::Map<const VectorXcd>(t.data(), t.size());
}

Tensor vector_as_tensor(const VectorXcd& v, const std::vector<long>& dims) {
  Tensor t(dims);
  Eigen::Map<VectorXcd>(t.data(), t.size()) = v;
  return t;
}

void thin_qr(const MatrixXcd& m, MatrixXcd& q, MatrixXcd& r) {
  const long k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<MatrixXcd> qr(m);
  q = qr.householderQ() * MatrixXcd::Identity(m.rows(), k);
  r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
}

/// One-site DMRG-style engine: mixed-canonical state, cached environments
/// of <psi|O|psi>, local eigenproblems on the center tensor.
class SweepEngine {
 public:
  SweepEngine(const Mps& psi, const Mpo& op, const SolverConfig& cfg,
              std::mt19937_64& rng)
      : op_(&op), cfg_(&cfg), rng_(&rng), local_dim_(psi.local_dim()) {
    Mps canon = canonicalize(psi, 0);
    ts_ = canon.tensors();
    const double nrm = ts_[0].norm();
    if (nrm == 0) throw SolverError("cannot sweep on the zero state");
    ts_[0] = ts_[0].scaled(1.0 / nrm);
    center_ = 0;

    const long n = n_sites();
    Tensor one({1, 1, 1});
    one({0, 0, 0}) = 1.0;
    left_env_.assign(static_cast<std::size_t>(n), Tensor());
    right_env_.assign(static_cast<std::size_t>(n), Tensor());
    left_env_[0] = one;
    right_env_[static_cast<std::size_t>(n - 1)] = one;
    for (long i = n - 2; i >= 0; --i)
      right_env_[static_cast<std::size_t>(i)] =
          absorb_right(right_env_[static_cast<std::size_t>(i + 1)],
                       ts_[static_cast<std::size_t>(i + 1)], op.site(i + 1));
  }

  long n_sites() const { return static_cast<long>(ts_.size()); }
  long center() const { return center_; }
  double last_value() const { return last_value_; }

  Mps state() const { return Mps(local_dim_, ts_, center_); }

  LinearMap local_map(long i) const {
    const Tensor& e = left_env_[static_cast<std::size_t>(i)];
    const Tensor& f = right_env_[static_cast<std::size_t>(i)];
    const Tensor& w = op_->site(i);
    const long dl = e.dim(2), p = local_dim_, dr = f.dim(2);

    LinearMap map;
    map.dimension = dl * p * dr;
    map.apply = [&e, &f, &w, dl, p, dr](const VectorXcd& x, VectorXcd& y) {
      Tensor xt = vector_as_tensor(x, {dl, p, dr});
      Tensor t1 = contract(e, xt, {{2, 0}});            // (a, k, p, r)
      Tensor t2 = contract(t1, w, {{1, 0}, {2, 2}});    // (a, r, po, k')
      Tensor yt = contract(t2, f, {{1, 2}, {3, 1}});    // (a, po, a')
      y = tensor_as_vector(yt);
    };
    map.diagonal = local_diagonal(i);
    return map;
  }

  double solve_site(long i, const std::vector<VectorXcd>* deflate = nullptr) {
    move_center_to(i);
    LinearMap map = local_map(i);
    const VectorXcd guess = tensor_as_vector(ts_[static_cast<std::size_t>(i)]);
    EigenSolveOptions opts;
    opts.rng = rng_;
    opts.deflate = deflate;
    EigenPair pair =
        smallest_eigenpair(map, guess, cfg_->eigen_tol, cfg_->eigen_max_iter, opts);
    const Tensor& cur = ts_[static_cast<std::size_t>(i)];
    ts_[static_cast<std::size_t>(i)] =
        vector_as_tensor(pair.vector, {cur.dim(0), cur.dim(1), cur.dim(2)});
    last_value_ = pair.value;
    return pair.value;
  }

  /// Smallest local eigenvalue orthogonal to the current center tensor.
  double deflated_probe(long i) {
    move_center_to(i);
    LinearMap map = local_map(i);
    std::vector<VectorXcd> deflate{
        tensor_as_vector(ts_[static_cast<std::size_t>(i)]).normalized()};
    std::normal_distribution<double> dist;
    VectorXcd probe(map.dimension);
    for (long k = 0; k < map.dimension; ++k)
      probe[k] = Complex(dist(*rng_), dist(*rng_));
    EigenSolveOptions opts;
    opts.rng = rng_;
    opts.deflate = &deflate;
    EigenPair pair = smallest_eigenpair(map, probe, cfg_->eigen_tol,
                                        cfg_->eigen_max_iter, opts);
    return pair.value;
  }

  void move_center_to(long j) {
    while (center_ < j) move_right();
    while (center_ > j) move_left();
  }

  /// Effective-operator Hermiticity on random unit vectors; relative
  /// violation beyond 1e-8 is an internal inconsistency.
  void check_hermiticity(long i) {
    move_center_to(i);
    LinearMap map = local_map(i);
    std::normal_distribution<double> dist;
    VectorXcd x(map.dimension), y(map.dimension);
    for (long k = 0; k < map.dimension; ++k) {
      x[k] = Complex(dist(*rng_), dist(*rng_));
      y[k] = Complex(dist(*rng_), dist(*rng_));
    }
    x.normalize();
    y.normalize();
    const VectorXcd hx = map(x), hy = map(y);
    const double scale = std::max({hx.norm(), hy.norm(), 1e-300});
    const double violation = std::abs(x.dot(hy) - std::conj(y.dot(hx))) / scale;
    if (violation > 1e-8)
      throw InternalConsistencyError(
          "effective operator lost Hermiticity: relative violation " +
          std::to_string(violation));
  }

 private:
  static Tensor absorb_left(const Tensor& e, const Tensor& a, const Tensor& w) {
    Tensor t1 = contract(e, a, {{2, 0}});               // (a, k, p, b')
    Tensor t2 = contract(t1, w, {{1, 0}, {2, 2}});      // (a, b', po, k')
    Tensor t3 = contract(a.conjugated(), t2, {{0, 0}, {1, 2}});  // (a', b', k')
    return t3.permuted({0, 2, 1});                      // (a', k', b')
  }

  static Tensor absorb_right(const Tensor& f, const Tensor& a, const Tensor& w) {
    Tensor t1 = contract(a, f, {{2, 2}});               // (b_l, p, a, k)
    Tensor t2 = contract(w, t1, {{2, 1}, {3, 3}});      // (k_l, po, b_l, a)
    Tensor t3 = contract(a.conjugated(), t2, {{1, 1}, {2, 3}});  // (a_l, k_l, b_l)
    return t3;
  }

  VectorXd local_diagonal(long i) const {
    const Tensor& e = left_env_[static_cast<std::size_t>(i)];
    const Tensor& f = right_env_[static_cast<std::size_t>(i)];
    const Tensor& w = op_->site(i);
    const long dl = e.dim(2), p = local_dim_, dr = f.dim(2);
    const long kl = w.dim(0), kr = w.dim(3);

    MatrixXcd ediag(dl, kl), fdiag(dr, kr);
    for (long a = 0; a < dl; ++a)
      for (long k = 0; k < kl; ++k) ediag(a, k) = e({a, k, a});
    for (long b = 0; b < dr; ++b)
      for (long k = 0; k < kr; ++k) fdiag(b, k) = f({b, k, b});

    VectorXd out(dl * p * dr);
    MatrixXcd wslice(kl, kr);
    for (long q = 0; q < p; ++q) {
      for (long k = 0; k < kl; ++k)
        for (long kk = 0; kk < kr; ++kk) wslice(k, kk) = w({k, q, q, kk});
      const MatrixXcd left = ediag * wslice;  // (dl, kr)
      for (long a = 0; a < dl; ++a)
        for (long b = 0; b < dr; ++b)
          out[(a * p + q) * dr + b] = (left.row(a) * fdiag.row(b).transpose()).value().real();
    }
    return out;
  }

  void move_right() {
    const long c = center_;
    Tensor& a = ts_[static_cast<std::size_t>(c)];
    const long l = a.dim(0), p = a.dim(1), r = a.dim(2);
    MatrixXcd q, rm;
    thin_qr(a.matrix_view(l * p), q, rm);
    const long k = q.cols();
    Tensor qa({l, p, k});
    Eigen::Map<RowMatrixXcd>(qa.data(), l * p, k) = q;
    a = std::move(qa);
    Tensor& b = ts_[static_cast<std::size_t>(c + 1)];
    b = contract(Tensor::from_matrix(rm), b, {{1, 0}});
    left_env_[static_cast<std::size_t>(c + 1)] =
        absorb_left(left_env_[static_cast<std::size_t>(c)],
                    ts_[static_cast<std::size_t>(c)], op_->site(c));
    ++center_;
  }

  void move_left() {
    const long c = center_;
    Tensor& a = ts_[static_cast<std::size_t>(c)];
    const long l = a.dim(0), p = a.dim(1), r = a.dim(2);
    MatrixXcd m = a.matrix_view(l);  // l x (p r)
    MatrixXcd q, rm;
    thin_qr(m.adjoint(), q, rm);
    const long k = q.cols();
    Tensor qa({k, p, r});
    Eigen::Map<RowMatrixXcd>(qa.data(), k, p * r) = q.adjoint();
    a = std::move(qa);
    Tensor& b = ts_[static_cast<std::size_t>(c - 1)];
    b = contract(b, Tensor::from_matrix(MatrixXcd(rm.adjoint())), {{2, 0}});
    right_env_[static_cast<std::size_t>(c - 1)] =
        absorb_right(right_env_[static_cast<std::size_t>(c)],
                     ts_[static_cast<std::size_t>(c)], op_->site(c));
    --center_;
  }

  const Mpo* op_;
  const SolverConfig* cfg_;
  std::mt19937_64* rng_;
  long local_dim_;
  std::vector<Tensor> ts_;
  std::vector<Tensor> left_env_, right_env_;
  long center_ = 0;
  double last_value_ = 0;
};

/// Bond padding for the next stage: new entries carry noise relative to
/// the largest tensor entry.
Mps grow_bonds(const Mps& psi, long target, double noise,
               std::mt19937_64& rng) {
  const long n = psi.n_sites();
  const long p = psi.local_dim();
  std::vector<Tensor> ts = psi.tensors();
  std::normal_distribution<double> dist;

  for (long i = 0; i + 1 < n; ++i) {
    double cap = static_cast<double>(target);
    cap = std::min(cap, std::pow(static_cast<double>(p),
                                 static_cast<double>(std::min<long>(i + 1, 30))));
    cap = std::min(cap, std::pow(static_cast<double>(p),
                                 static_cast<double>(std::min<long>(n - 1 - i, 30))));
    const long want = std::max<long>(1, static_cast<long>(cap));
    const long have = ts[static_cast<std::size_t>(i)].dim(2);
    if (have >= want) continue;

    Tensor& a = ts[static_cast<std::size_t>(i)];
    Tensor& b = ts[static_cast<std::size_t>(i + 1)];
    const double amp_a = noise * std::max(a.max_abs(), 1e-300);
    const double amp_b = noise * std::max(b.max_abs(), 1e-300);

    Tensor na({a.dim(0), a.dim(1), want});
    for (long x = 0; x < a.dim(0); ++x)
      for (long q = 0; q < a.dim(1); ++q)
        for (long y = 0; y < want; ++y)
          na({x, q, y}) = y < have ? a({x, q, y})
                                   : Complex(amp_a * dist(rng), amp_a * dist(rng));
    Tensor nb({want, b.dim(1), b.dim(2)});
    for (long x = 0; x < want; ++x)
      for (long q = 0; q < b.dim(1); ++q)
        for (long y = 0; y < b.dim(2); ++y)
          nb({x, q, y}) = x < have ? b({x, q, y})
                                   : Complex(amp_b * dist(rng), amp_b * dist(rng));
    a = std::move(na);
    b = std::move(nb);
  }
  return Mps(p, std::move(ts));
}

std::vector<long> outside_in_order(long n) {
  std::vector<long> order;
  for (long k = 0; 2 * k < n; ++k) {
    order.push_back(k);
    if (n - 1 - k != k) order.push_back(n - 1 - k);
  }
  return order;
}

Mps warmup_candidate(long index, long n, long d, std::mt19937_64& rng) {
  const long d2 = d * d;
  std::vector<VectorXcd> sites;
  auto vec_of = [&](const Eigen::MatrixXcd& rho) {
    VectorXcd v(d2);
    for (long s = 0; s < d; ++s)
      for (long r = 0; r < d; ++r) v[s * d + r] = rho(s, r);
    return v;
  };
  for (long i = 0; i < n; ++i) {
    Eigen::MatrixXcd rho;
    if (index == 0) {
      rho = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
    } else if (index == 1 || index == 2) {
      rho = Eigen::MatrixXcd::Zero(d, d);
      rho(index == 1 ? 0 : d - 1, index == 1 ? 0 : d - 1) = 1.0;
    } else {
      std::normal_distribution<double> dist;
      Eigen::MatrixXcd a(d, d);
      for (long x = 0; x < d; ++x)
        for (long y = 0; y < d; ++y) a(x, y) = Complex(dist(rng), dist(rng));
      rho = a * a.adjoint() + 0.2 * Eigen::MatrixXcd::Identity(d, d);
      rho /= rho.trace();
    }
    sites.push_back(vec_of(rho));
  }
  return Mps::product_state(n, d2, sites);
}

/// D=1 symmetric rounds to numerical precision, with the physicality
/// screen deciding restarts.
Mps warmup_impl(const Mpo& ldagl, long phys_dim, const SolverConfig& cfg,
                std::mt19937_64& rng, long& restarts_used,
                std::vector<PhysicalityReport>& rejected) {
  if (cfg.max_restarts < 1) throw SolverError("max_restarts must be >= 1");
  const long n = ldagl.n_sites();
  const std::vector<long> out_in = outside_in_order(n);
  std::vector<long> in_out(out_in.rbegin(), out_in.rend());

  for (long attempt = 0; attempt < cfg.max_restarts; ++attempt) {
    Mps candidate = warmup_candidate(attempt, n, phys_dim, rng);
    SweepEngine engine(candidate, ldagl, cfg, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (long round = 0; round < kWarmupMaxRounds; ++round) {
      for (long site : out_in) engine.solve_site(site);
      for (long site : in_out) engine.solve_site(site);
      const double value = engine.last_value();
      if (std::abs(prev - value) <=
          std::max(kWarmupRoundTol * std::abs(value), 1e-15))
        break;
      prev = value;
    }
    Mps result = engine.state();
    PhysicalityReport report =
        physicality_check(result, cfg.physicality_tol_small_d);
    if (report.pass) {
      restarts_used = attempt;
      return result;
    }
    rejected.push_back(std::move(report));
  }
  throw WarmupError("warm-up exhausted " + std::to_string(cfg.max_restarts) +
                        " restarts without a physical D=1 state",
                    rejected);
}

struct StageHooks {
  const SolveHooks* hooks = nullptr;
  Clock::time_point t0;
};

AlsResult als_stage_impl(const Mps& guess, const Mpo& ldagl, long D,
                         const SolverConfig& cfg, std::mt19937_64& rng,
                         const StageHooks& sh) {
  if (guess.max_bond() > D)
    throw SolverError("guess bond dimension exceeds the stage target");
  const long n = guess.n_sites();
  SweepEngine engine(guess, ldagl, cfg, rng);
  engine.check_hermiticity(0);

  AlsResult out;
  double prev = std::numeric_limits<double>::infinity();
  long sweep = 0;
  for (sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    for (long i = 0; i < n; ++i)
      out.eigenvalue_trace.push_back(engine.solve_site(i));
    for (long i = n - 1; i >= 0; --i)
      out.eigenvalue_trace.push_back(engine.solve_site(i));
    const double value = engine.last_value();
    if (sh.hooks != nullptr && sh.hooks->progress)
      sh.hooks->progress({D, sweep, value, seconds_since(sh.t0)});
    if (std::abs(prev - value) <=
        std::max(cfg.sweep_tol * std::abs(prev), cfg.sweep_abs_floor))
      break;
    prev = value;
  }
  out.sweeps = std::min(sweep, cfg.max_sweeps);
  out.state = engine.state();
  out.eigenvalue = engine.last_value();
  return out;
}

void validate_config(const SolverConfig& cfg) {
  if (cfg.bond_schedule.empty())
    throw SolverError("bond schedule must not be empty");
  for (std::size_t k = 0; k < cfg.bond_schedule.size(); ++k) {
    if (cfg.bond_schedule[k] < 1)
      throw SolverError("bond dimensions must be positive");
    if (k > 0 && cfg.bond_schedule[k] <= cfg.bond_schedule[k - 1])
      throw SolverError("bond schedule must be strictly increasing");
  }
  if (cfg.eigen_tol <= 0 || cfg.sweep_tol <= 0 || cfg.eigenvalue_accept <= 0 ||
      cfg.polarization_tol <= 0 || cfg.purity_tol <= 0)
    throw SolverError("tolerances must be positive");
}

StageRecord make_record(long d_value, double eigenvalue, long sweeps,
                        const Mps& psi, const std::string& order_param_id) {
  StageRecord rec;
  rec.D = d_value;
  rec.eigenvalue = eigenvalue;
  rec.sweeps = sweeps;
  const Mps h = normalize_and_hermitize(psi);
  rec.pol_x = pauli_profile(h, 'x');
  rec.pol_y = pauli_profile(h, 'y');
  rec.pol_z = pauli_profile(h, 'z');
  rec.order_param = order_parameter(h, order_param_id);
  rec.purity = purity(h);
  return rec;
}

SteadyStateReport solve_impl(const ModelSpec& model, const SolverConfig& cfg,
                             const SolveHooks& hooks, const Mps* guess) {
  validate_config(cfg);
  validate(model);
  const Clock::time_point t0 = Clock::now();
  std::mt19937_64 rng(cfg.rng_seed);

  const Mpo lop = build_lindbladian(model);
  const Mpo ldagl_exact = mpo_product(mpo_adjoint(lop), lop);
  const Mpo ldagl =
      compress_mpo(ldagl_exact, ldagl_exact.max_bond(), kMpoCompressCutoff).first;

  SteadyStateReport report;
  Mps psi;
  if (guess != nullptr &&
      physicality_check(*guess, cfg.physicality_tol_small_d).pass) {
    psi = *guess;
    const long cap = cfg.bond_schedule.back();
    if (psi.max_bond() > cap) psi = compress(psi, cap, kMpoCompressCutoff).first;
    psi = canonicalize(psi, 0);
    report.restarts_used = 0;
  } else {
    std::vector<PhysicalityReport> rejected;
    psi = warmup_impl(ldagl, model.phys_dim, cfg, rng, report.restarts_used,
                      rejected);
  }

  double eigenvalue = expectation(psi, ldagl).real();
  report.d_history.push_back(make_record(psi.max_bond(), eigenvalue, 0, psi,
                                         model.order_param_id));

  bool exact_at_start = eigenvalue <= cfg.warmup_exact_accept;
  if (exact_at_start) {
    report.converged = true;
    report.reason = "warm-up reached a numerically exact steady state";
  } else {
    for (long target : cfg.bond_schedule) {
      if (target <= psi.max_bond()) continue;
      Mps grown = grow_bonds(psi, target, cfg.growth_noise, rng);
      StageHooks sh{&hooks, t0};
      AlsResult als = als_stage_impl(grown, ldagl, target, cfg, rng, sh);
      psi = als.state;
      eigenvalue = als.eigenvalue;

      StageRecord rec = make_record(psi.max_bond(), als.eigenvalue, als.sweeps,
                                    psi, model.order_param_id);
      const double tol =
          target <= 2 ? cfg.physicality_tol_small_d : cfg.physicality_tol;
      PhysicalityReport phys = physicality_check(psi, tol);
      rec.physical = phys.pass;
      report.d_history.push_back(rec);

      if (!hooks.checkpoint_dir.empty())
        save_mps(hooks.checkpoint_dir + "/checkpoint_D" +
                     std::to_string(target) + ".mps",
                 psi);

      if (!phys.pass) {
        report.flags.physicality_failed = true;
        report.converged = false;
        report.reason = "physicality assertion failed at D=" +
                        std::to_string(target);
        break;
      }

      const auto& hist = report.d_history;
      ConvergenceDecision dec =
          decide_convergence(hist[hist.size() - 2], hist.back(), cfg);
      if (dec.converged) {
        report.converged = true;
        report.reason = "observables converged across bond dimensions";
        break;
      }
    }
    if (!report.converged && report.reason.empty())
      report.reason = "bond schedule exhausted before convergence";
  }

  report.final_eigenvalue = expectation(psi, ldagl_exact).real();
  report.search_state = psi;

  const Mps delta = mps_add(psi, mps_adjoint(psi), 1.0, -1.0);
  report.nonherm_residual = norm(delta) / std::max(norm(psi), 1e-300);
  if (report.nonherm_residual >
      10.0 * std::sqrt(std::max(report.final_eigenvalue, 0.0)))
    report.flags.nonhermitian_residual_exceeded = true;

  if (report.final_eigenvalue <= cfg.eigenvalue_accept) {
    SweepEngine probe(psi, ldagl, cfg, rng);
    const long mid = psi.n_sites() / 2;
    probe.solve_site(mid);
    const double second = probe.deflated_probe(mid);
    if (second <=
        std::max(cfg.eigenvalue_accept, 100.0 * std::abs(report.final_eigenvalue)))
      report.flags.degenerate_suspected = true;
  }

  try {
    report.state = normalize_and_hermitize(psi);
  } catch (const NonNormalizableError&) {
    report.state = psi;
    report.flags.physicality_failed = true;
    report.converged = false;
    report.reason = "accepted state has vanishing trace";
  }
  return report;
}

}  // namespace

ConvergenceDecision decide_convergence(const StageRecord& prev,
                                       const StageRecord& cur,
                                       const SolverConfig& cfg) {
  ConvergenceDecision dec;
  dec.eigenvalue_ok = cur.eigenvalue <= cfg.eigenvalue_accept;

  const double n = static_cast<double>(cur.pol_x.size());
  const double floor = 1e-3 * std::sqrt(std::max(n, 1.0));
  auto rel_change = [floor](const VectorXd& a, const VectorXd& b) {
    return (b - a).norm() / std::max(a.norm(), floor);
  };
  dec.polarization_ok = rel_change(prev.pol_x, cur.pol_x) < cfg.polarization_tol &&
                        rel_change(prev.pol_y, cur.pol_y) < cfg.polarization_tol &&
                        rel_change(prev.pol_z, cur.pol_z) < cfg.polarization_tol;
  dec.scalars_ok =
      std::abs(cur.order_param - prev.order_param) < cfg.purity_tol &&
      std::abs(cur.purity - prev.purity) < cfg.purity_tol;
  dec.converged = dec.eigenvalue_ok && dec.polarization_ok && dec.scalars_ok;
  return dec;
}

PhysicalityReport physicality_check(const Mps& psi, double tol) {
  PhysicalityReport report;
  const long n = psi.n_sites();
  const double d = std::sqrt(static_cast<double>(psi.local_dim()));
  const Complex tr = overlap(trace_vector(n, static_cast<long>(std::llround(d))), psi);
  const double scale = norm(psi) * std::pow(d, n / 2.0);
  report.trace_fraction = std::abs(tr) / std::max(scale, 1e-300);
  if (report.trace_fraction < 1e-12) {
    report.vanishing_trace = true;
    report.pass = false;
    return report;
  }
  Mps h;
  try {
    h = normalize_and_hermitize(psi);
  } catch (const NonNormalizableError&) {
    report.vanishing_trace = true;
    report.pass = false;
    return report;
  }
  for (char axis : {'x', 'y', 'z'}) {
    const VectorXd prof = pauli_profile(h, axis);
    for (long i = 0; i < n; ++i)
      if (std::abs(prof[i]) > 1.0 + tol)
        report.violations.push_back({i, axis, prof[i]});
  }
  report.pass = report.violations.empty();
  return report;
}

Mps normalize_and_hermitize(const Mps& psi) {
  const long n = psi.n_sites();
  const long d = static_cast<long>(
      std::llround(std::sqrt(static_cast<double>(psi.local_dim()))));
  const Complex tr = overlap(trace_vector(n, d), psi);
  const double scale = norm(psi) * std::pow(static_cast<double>(d), n / 2.0);
  if (std::abs(tr) < 1e-14 * std::max(scale, 1e-300))
    throw NonNormalizableError("state is orthogonal to the trace vector");

  const Complex half_over_tr = 0.5 / tr;
  Mps h = mps_add(psi, mps_adjoint(psi), half_over_tr, std::conj(half_over_tr));
  h = compress(h, std::max(psi.max_bond() * 2, 1L), kMpoCompressCutoff).first;
  const Complex tr2 = overlap(trace_vector(n, d), h);
  return mps_scaled(h, 1.0 / tr2);
}

Mps warmup(const ModelSpec& model, const SolverConfig& cfg) {
  validate_config(cfg);
  std::mt19937_64 rng(cfg.rng_seed);
  const Mpo lop = build_lindbladian(model);
  const Mpo ldagl_exact = mpo_product(mpo_adjoint(lop), lop);
  const Mpo ldagl =
      compress_mpo(ldagl_exact, ldagl_exact.max_bond(), kMpoCompressCutoff).first;
  long restarts = 0;
  std::vector<PhysicalityReport> rejected;
  return warmup_impl(ldagl, model.phys_dim, cfg, rng, restarts, rejected);
}

AlsResult als_stage(const Mps& guess, const Mpo& ldagl, long D,
                    const SolverConfig& cfg) {
  std::mt19937_64 rng(cfg.rng_seed);
  return als_stage_impl(guess, ldagl, D, cfg, rng, StageHooks{nullptr, Clock::now()});
}

SteadyStateReport solve(const ModelSpec& model, const SolverConfig& cfg,
                        const SolveHooks& hooks) {
  return solve_impl(model, cfg, hooks, nullptr);
}

SteadyStateReport solve_with_guess(const ModelSpec& model,
                                   const SolverConfig& cfg, const Mps& guess,
                                   const SolveHooks& hooks) {
  return solve_impl(model, cfg, hooks, &guess);
}

double order_parameter(const Mps& state, const std::string& order_param_id) {
  if (order_param_id == "mz2") return staggered_mz_sq(state);
  if (order_param_id == "sy2")
    return collective_spin_sq(state, 'y', SpinNormalization::PerSite);
  if (order_param_id == "sz2")
    return collective_spin_sq(state, 'z', SpinNormalization::PerSite);
  throw SolverError("unknown order parameter id: " + order_param_id);
}

}  // namespace steadymps
