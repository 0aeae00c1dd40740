#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "steadymps/solver.hpp"

namespace steadymps {

struct SweepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GuessPolicy { Fresh, ReuseNeighbor };

/// One sweep: a model, a parameter grid, chain lengths, and solver
/// settings. Serialized as a flat JSON document whose canonical
/// (sorted-key) form defines the config hash.
struct RunConfig {
  std::string model_id;
  std::vector<long> n_list;
  std::map<std::string, std::vector<double>> param_grid;
  SolverConfig solver;
  GuessPolicy guess_policy = GuessPolicy::Fresh;
  std::string output_dir;
  bool emit_checkpoints = false;
  long workers = 1;
};

RunConfig run_config_from_json(const std::string& text);
std::string run_config_to_json(const RunConfig& cfg);
/// FNV-1a over the canonical serialized form.
std::uint64_t config_hash(const RunConfig& cfg);

struct PointResult {
  long index = 0;
  long n = 0;
  std::map<std::string, double> params;
  std::string status;  // converged | unconverged | warmup-failed | unphysical | error
  long d_final = 0;
  double eigenvalue = 0;
  double order_param = 0;
  double purity = 0;
  double nonherm_residual = 0;
  bool degenerate_suspected = false;
};

struct SweepResult {
  std::vector<PointResult> points;
  std::uint64_t hash = 0;
  std::string csv_path;
  std::string log_path;
};

/// Solve every (parameters, N) grid point. Failures are recorded as rows
/// and the sweep continues. Points are dispatched to a worker pool and
/// merged in grid order, so output is deterministic for a fixed seed.
SweepResult run_sweep(const RunConfig& cfg);

struct FitResult {
  double intercept = 0;
  double slope = 0;
  double residual = 0;  // root-mean-square misfit
};

/// Least-squares fit of value against 1/N; the intercept estimates the
/// N -> infinity limit.
FitResult extrapolate_1overN(const std::vector<std::pair<double, double>>& points);

/// Rows of a sweep CSV holding (N, value) pairs of one column, optionally
/// filtered on exact values of other columns.
std::vector<std::pair<double, double>> read_csv_column_vs_n(
    const std::string& csv_path, const std::string& column,
    const std::map<std::string, std::string>& where = {});

std::string format_double(double v);

}  // namespace steadymps
