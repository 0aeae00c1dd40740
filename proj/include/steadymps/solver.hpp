#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "steadymps/model_spec.hpp"
#include "steadymps/mpo.hpp"
#include "steadymps/mps.hpp"
#include "steadymps/observables.hpp"

namespace steadymps {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonNormalizableError : SolverError {
  using SolverError::SolverError;
};

struct InternalConsistencyError : SolverError {
  using SolverError::SolverError;
};

struct SolverConfig {
  std::vector<long> bond_schedule{1, 2, 4, 6, 8, 12, 16, 20, 24, 30};
  double eigen_tol = 1e-9;        // local eigensolver residual tolerance
  long eigen_max_iter = 600;      // operator applications per local solve
  double sweep_tol = 1e-5;        // relative eigenvalue change ending a stage
  double sweep_abs_floor = 1e-14; // absolute eigenvalue change floor
  long max_sweeps = 50;           // per bond-dimension stage
  double eigenvalue_accept = 1e-5;   // absolute threshold on final <L^dag L>
  double polarization_tol = 1e-4;    // relative change across D
  double purity_tol = 1e-2;          // absolute change across D
  long max_restarts = 8;             // warm-up retry budget
  std::uint64_t rng_seed = 12345;
  double warmup_exact_accept = 1e-12;  // D=1 eigenvalue at numerical zero
  double physicality_tol_small_d = 0.05;  // for D <= 2
  double physicality_tol = 0.005;         // for larger D
  double growth_noise = 1e-8;  // bond padding, relative to max tensor entry
};

struct PhysicalityViolation {
  long site;
  char axis;
  double value;
};

struct PhysicalityReport {
  bool pass = false;
  bool vanishing_trace = false;
  double trace_fraction = 0;  // |<Phi(1)|psi>| / (||psi|| d^{n/2})
  std::vector<PhysicalityViolation> violations;
};

struct WarmupError : SolverError {
  WarmupError(std::string msg, std::vector<PhysicalityReport> rejected)
      : SolverError(std::move(msg)), rejected_candidates(std::move(rejected)) {}
  std::vector<PhysicalityReport> rejected_candidates;
};

struct StageRecord {
  long D = 0;
  double eigenvalue = 0;
  long sweeps = 0;
  VectorXd pol_x, pol_y, pol_z;
  double order_param = 0;
  double purity = 0;
  bool physical = true;
};

struct ConvergenceDecision {
  bool converged = false;
  bool eigenvalue_ok = false;
  bool polarization_ok = false;
  bool scalars_ok = false;
};

/// The paper-threshold stopping rule across consecutive bond dimensions:
/// absolute eigenvalue acceptance, relative Euclidean change of the
/// polarization vectors, and absolute change of the tracked scalars.
ConvergenceDecision decide_convergence(const StageRecord& prev,
                                       const StageRecord& cur,
                                       const SolverConfig& cfg);

struct SolverFlags {
  bool warmup_failed = false;
  bool physicality_failed = false;
  bool degenerate_suspected = false;
  bool nonhermitian_residual_exceeded = false;
};

struct SteadyStateReport {
  Mps state;         // trace-normalized, hermitized
  Mps search_state;  // the unit-norm variational vector
  double final_eigenvalue = 0;
  std::vector<StageRecord> d_history;
  long restarts_used = 0;
  SolverFlags flags;
  bool converged = false;
  std::string reason;
  double nonherm_residual = 0;
};

struct SweepProgress {
  long stage_D = 0;
  long sweep = 0;
  double eigenvalue = 0;
  double seconds = 0;
};

struct SolveHooks {
  std::function<void(const SweepProgress&)> progress;
  std::string checkpoint_dir;  // stage-boundary checkpoints when nonempty
};

/// Trace and physical-range screening on the hermitized, trace-normalized
/// copy of psi. Failure is a value, never an exception.
PhysicalityReport physicality_check(const Mps& psi, double tol);

/// (rho/tr(rho) + h.c.)/2 with the trace restored to exactly one by a
/// final scalar division. Bond dimension at most doubles, then recompresses.
Mps normalize_and_hermitize(const Mps& psi);

/// D=1 symmetric-sweep initialization: outside-in/inside-out rounds until
/// the D=1 problem converges to numerical precision, restarting from fresh
/// product states while the result fails the physicality screen.
Mps warmup(const ModelSpec& model, const SolverConfig& cfg);

struct AlsResult {
  Mps state;
  double eigenvalue = 0;
  long sweeps = 0;
  std::vector<double> eigenvalue_trace;  // one entry per local update
};

/// Alternating least-squares sweeps at fixed bond dimension D.
AlsResult als_stage(const Mps& guess, const Mpo& ldagl, long D,
                    const SolverConfig& cfg);

/// Full pipeline: warm-up, staged bond growth, physicality assertions,
/// convergence decision, hermitization of the result.
SteadyStateReport solve(const ModelSpec& model, const SolverConfig& cfg,
                        const SolveHooks& hooks = {});

/// Same, but seeded with a previous solution instead of the warm-up phase
/// (used by parameter sweeps with guess reuse). Falls back to the fresh
/// warm-up when the guess fails the physicality screen.
SteadyStateReport solve_with_guess(const ModelSpec& model,
                                   const SolverConfig& cfg, const Mps& guess,
                                   const SolveHooks& hooks = {});

/// The model's tracked scalar order parameter, evaluated on a hermitized
/// trace-normalized state.
double order_parameter(const Mps& state, const std::string& order_param_id);

}  // namespace steadymps
