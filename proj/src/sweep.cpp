#include "steadymps/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "steadymps/models.hpp"
#include "steadymps/version.hpp"

namespace steadymps {

namespace {

using nlohmann::json;

json solver_to_json(const SolverConfig& s) {
  return json{{"bond_schedule", s.bond_schedule},
              {"eigen_tol", s.eigen_tol},
              {"eigen_max_iter", s.eigen_max_iter},
              {"sweep_tol", s.sweep_tol},
              {"sweep_abs_floor", s.sweep_abs_floor},
              {"max_sweeps", s.max_sweeps},
              {"eigenvalue_accept", s.eigenvalue_accept},
              {"polarization_tol", s.polarization_tol},
              {"purity_tol", s.purity_tol},
              {"max_restarts", s.max_restarts},
              {"seed", s.rng_seed},
              {"warmup_exact_accept", s.warmup_exact_accept},
              {"physicality_tol_small_d", s.physicality_tol_small_d},
              {"physicality_tol", s.physicality_tol},
              {"growth_noise", s.growth_noise}};
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig s;
  if (j.contains("bond_schedule"))
    s.bond_schedule = j.at("bond_schedule").get<std::vector<long>>();
  s.eigen_tol = j.value("eigen_tol", s.eigen_tol);
  s.eigen_max_iter = j.value("eigen_max_iter", s.eigen_max_iter);
  s.sweep_tol = j.value("sweep_tol", s.sweep_tol);
  s.sweep_abs_floor = j.value("sweep_abs_floor", s.sweep_abs_floor);
  s.max_sweeps = j.value("max_sweeps", s.max_sweeps);
  s.eigenvalue_accept = j.value("eigenvalue_accept", s.eigenvalue_accept);
  s.polarization_tol = j.value("polarization_tol", s.polarization_tol);
  s.purity_tol = j.value("purity_tol", s.purity_tol);
  s.max_restarts = j.value("max_restarts", s.max_restarts);
  s.rng_seed = j.value("seed", s.rng_seed);
  s.warmup_exact_accept = j.value("warmup_exact_accept", s.warmup_exact_accept);
  s.physicality_tol_small_d =
      j.value("physicality_tol_small_d", s.physicality_tol_small_d);
  s.physicality_tol = j.value("physicality_tol", s.physicality_tol);
  s.growth_noise = j.value("growth_noise", s.growth_noise);
  return s;
}

struct GridPoint {
  long index;
  long n;
  std::map<std::string, double> params;
};

std::vector<GridPoint> expand_grid(const RunConfig& cfg) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : cfg.param_grid) {
    if (v.empty()) throw SweepError("empty grid for parameter " + k);
    keys.push_back(k);
  }
  std::vector<GridPoint> points;
  long index = 0;
  for (long n : cfg.n_list) {
    std::vector<std::size_t> counter(keys.size(), 0);
    while (true) {
      GridPoint p;
      p.index = index++;
      p.n = n;
      for (std::size_t k = 0; k < keys.size(); ++k)
        p.params[keys[k]] = cfg.param_grid.at(keys[k])[counter[k]];
      points.push_back(std::move(p));
      // row-major increment over sorted keys, last key fastest
      std::size_t k = keys.size();
      while (k > 0) {
        --k;
        if (++counter[k] < cfg.param_grid.at(keys[k]).size()) break;
        counter[k] = 0;
        if (k == 0) {
          k = keys.size() + 1;  // overflowed the first key: done
          break;
        }
      }
      if (keys.empty() || k == keys.size() + 1) break;
    }
  }
  return points;
}

std::uint64_t mix_seed(std::uint64_t seed, long index) {
  std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

PointResult summarize(const GridPoint& gp, const SteadyStateReport& report) {
  PointResult out;
  out.index = gp.index;
  out.n = gp.n;
  out.params = gp.params;
  out.d_final = report.d_history.empty() ? 0 : report.d_history.back().D;
  out.eigenvalue = report.final_eigenvalue;
  if (!report.d_history.empty()) {
    out.order_param = report.d_history.back().order_param;
    out.purity = report.d_history.back().purity;
  }
  out.nonherm_residual = report.nonherm_residual;
  out.degenerate_suspected = report.flags.degenerate_suspected;
  if (report.flags.physicality_failed)
    out.status = "unphysical";
  else if (report.converged)
    out.status = report.flags.degenerate_suspected ? "degenerate" : "converged";
  else
    out.status = "unconverged";
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RunConfig run_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SweepError(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  if (!j.contains("model")) throw SweepError("config requires a model id");
  cfg.model_id = j.at("model").get<std::string>();
  if (!j.contains("n")) throw SweepError("config requires an n list");
  cfg.n_list = j.at("n").get<std::vector<long>>();
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items())
      cfg.param_grid[k] = v.get<std::vector<double>>();
  if (j.contains("solver")) cfg.solver = solver_from_json(j.at("solver"));
  const std::string policy = j.value("guess_policy", "fresh");
  if (policy == "fresh")
    cfg.guess_policy = GuessPolicy::Fresh;
  else if (policy == "reuse-neighbor")
    cfg.guess_policy = GuessPolicy::ReuseNeighbor;
  else
    throw SweepError("unknown guess policy: " + policy);
  cfg.output_dir = j.value("output_dir", "");
  cfg.emit_checkpoints = j.value("emit_checkpoints", false);
  cfg.workers = j.value("workers", 1L);
  return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
  json j;
  j["model"] = cfg.model_id;
  j["n"] = cfg.n_list;
  json params = json::object();
  for (const auto& [k, v] : cfg.param_grid) params[k] = v;
  j["params"] = params;
  j["solver"] = solver_to_json(cfg.solver);
  j["guess_policy"] =
      cfg.guess_policy == GuessPolicy::Fresh ? "fresh" : "reuse-neighbor";
  j["output_dir"] = cfg.output_dir;
  j["emit_checkpoints"] = cfg.emit_checkpoints;
  j["workers"] = cfg.workers;
  return j.dump();  // object keys are sorted: this is the canonical form
}

std::uint64_t config_hash(const RunConfig& cfg) {
  const std::string canon = run_config_to_json(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SweepResult run_sweep(const RunConfig& cfg) {
  if (cfg.n_list.empty()) throw SweepError("n list must not be empty");
  for (long n : cfg.n_list)
    if (n < 2) throw SweepError("chain lengths must be at least 2");
  // fail on bad model ids or missing parameters before any solve
  {
    std::map<std::string, double> probe;
    for (const auto& [k, v] : cfg.param_grid) probe[k] = v.front();
    make_model(cfg.model_id, cfg.n_list.front(), probe);
  }

  namespace fs = std::filesystem;
  std::string outdir = cfg.output_dir;
  if (outdir.empty()) {
    const char* env = std::getenv("STEADYMPS_OUTDIR");
    outdir = env != nullptr ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (!fs::is_directory(outdir))
    throw SweepError("output directory is not writable: " + outdir);

  const std::vector<GridPoint> points = expand_grid(cfg);
  const std::uint64_t hash = config_hash(cfg);
  char hashbuf[32];
  std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                static_cast<unsigned long long>(hash));

  SweepResult result;
  result.hash = hash;
  result.csv_path = outdir + "/sweep_" + hashbuf + ".csv";
  result.log_path = outdir + "/sweep_" + hashbuf + ".log";
  result.points.resize(points.size());

  std::ofstream log(result.log_path);
  std::mutex log_mutex;

  auto solve_point = [&](const GridPoint& gp, const Mps* guess) {
    SolverConfig scfg = cfg.solver;
    scfg.rng_seed = mix_seed(cfg.solver.rng_seed, gp.index);
    SolveHooks hooks;
    if (cfg.emit_checkpoints) {
      const std::string dir = outdir + "/point_" + std::to_string(gp.index);
      fs::create_directories(dir);
      hooks.checkpoint_dir = dir;
    }
    hooks.progress = [&](const SweepProgress& p) {
      std::lock_guard<std::mutex> lock(log_mutex);
      log << "point=" << gp.index << " N=" << gp.n << " D=" << p.stage_D
          << " sweep=" << p.sweep << " eigenvalue=" << format_double(p.eigenvalue)
          << " elapsed=" << format_double(p.seconds) << "s\n";
    };

    const ModelSpec model = make_model(cfg.model_id, gp.n, gp.params);
    PointResult pr;
    std::optional<Mps> state;
    try {
      SteadyStateReport report = guess != nullptr
                                     ? solve_with_guess(model, scfg, *guess, hooks)
                                     : solve(model, scfg, hooks);
      pr = summarize(gp, report);
      state = report.search_state;
    } catch (const WarmupError&) {
      pr.index = gp.index;
      pr.n = gp.n;
      pr.params = gp.params;
      pr.status = "warmup-failed";
    } catch (const std::exception& e) {
      pr.index = gp.index;
      pr.n = gp.n;
      pr.params = gp.params;
      pr.status = "error";
      std::lock_guard<std::mutex> lock(log_mutex);
      log << "point=" << gp.index << " error: " << e.what() << "\n";
    }
    result.points[static_cast<std::size_t>(pr.index)] = pr;
    return state;
  };

  if (cfg.guess_policy == GuessPolicy::ReuseNeighbor) {
    // sequential within each N block: the previous point's state seeds the
    // next solve
    std::vector<std::vector<const GridPoint*>> blocks;
    long prev_n = -1;
    for (const auto& gp : points) {
      if (gp.n != prev_n) {
        blocks.emplace_back();
        prev_n = gp.n;
      }
      blocks.back().push_back(&gp);
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t b = next.fetch_add(1);
        if (b >= blocks.size()) return;
        std::optional<Mps> carry;
        for (const GridPoint* gp : blocks[b])
          carry = solve_point(*gp, carry.has_value() ? &*carry : nullptr);
      }
    };
    const long nthreads =
        std::max<long>(1, std::min<long>(cfg.workers,
                                         static_cast<long>(blocks.size())));
    std::vector<std::thread> threads;
    for (long t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= points.size()) return;
        solve_point(points[k], nullptr);
      }
    };
    const long nthreads =
        std::max<long>(1, std::min<long>(cfg.workers,
                                         static_cast<long>(points.size())));
    std::vector<std::thread> threads;
    for (long t = 0; t < nthreads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  // deterministic CSV, merged in grid order
  std::ofstream csv(result.csv_path);
  if (!csv) throw SweepError("cannot write " + result.csv_path);
  csv << "# steadymps " << kVersion << "\n";
  csv << "# config_hash " << hashbuf << "\n";
  csv << "# seed " << cfg.solver.rng_seed << "\n";
  csv << "model,N";
  for (const auto& [k, v] : cfg.param_grid) csv << "," << k;
  csv << ",D_final,status,eigenvalue,order_param,purity,nonherm_residual\n";
  for (const auto& pr : result.points) {
    csv << cfg.model_id << "," << pr.n;
    for (const auto& [k, v] : cfg.param_grid)
      csv << "," << format_double(pr.params.at(k));
    csv << "," << pr.d_final << "," << pr.status << ","
        << format_double(pr.eigenvalue) << "," << format_double(pr.order_param)
        << "," << format_double(pr.purity) << ","
        << format_double(pr.nonherm_residual) << "\n";
  }
  return result;
}

FitResult extrapolate_1overN(
    const std::vector<std::pair<double, double>>& points) {
  std::vector<double> xs;
  for (const auto& [n, y] : points) {
    if (n <= 0) throw SweepError("chain lengths must be positive");
    xs.push_back(1.0 / n);
  }
  {
    std::vector<double> uniq = xs;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (uniq.size() < 2)
      throw SweepError("extrapolation needs at least two distinct N");
  }
  const long m = static_cast<long>(points.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd y(m);
  for (long i = 0; i < m; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = xs[static_cast<std::size_t>(i)];
    y[i] = points[static_cast<std::size_t>(i)].second;
  }
  const Eigen::VectorXd coeff = a.colPivHouseholderQr().solve(y);
  FitResult out;
  out.intercept = coeff[0];
  out.slope = coeff[1];
  out.residual = std::sqrt((a * coeff - y).squaredNorm() / static_cast<double>(m));
  return out;
}

std::vector<std::pair<double, double>> read_csv_column_vs_n(
    const std::string& csv_path, const std::string& column,
    const std::map<std::string, std::string>& where) {
  std::ifstream in(csv_path);
  if (!in) throw SweepError("cannot open " + csv_path);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::pair<double, double>> out;
  long n_col = -1, val_col = -1;
  std::map<long, std::string> filters;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      for (long k = 0; k < static_cast<long>(header.size()); ++k) {
        if (header[static_cast<std::size_t>(k)] == "N") n_col = k;
        if (header[static_cast<std::size_t>(k)] == column) val_col = k;
        auto it = where.find(header[static_cast<std::size_t>(k)]);
        if (it != where.end()) filters[k] = it->second;
      }
      if (n_col < 0) throw SweepError("CSV has no N column");
      if (val_col < 0) throw SweepError("CSV has no column " + column);
      continue;
    }
    bool keep = true;
    for (const auto& [k, v] : filters) {
      const std::string& got = cells.at(static_cast<std::size_t>(k));
      if (got == v) continue;
      char* end1 = nullptr;
      char* end2 = nullptr;
      const double a = std::strtod(got.c_str(), &end1);
      const double b = std::strtod(v.c_str(), &end2);
      const bool numeric = end1 != got.c_str() && end2 != v.c_str();
      if (!(numeric && a == b)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    out.emplace_back(std::stod(cells.at(static_cast<std::size_t>(n_col))),
                     std::stod(cells.at(static_cast<std::size_t>(val_col))));
  }
  return out;
}

}  // namespace steadymps
