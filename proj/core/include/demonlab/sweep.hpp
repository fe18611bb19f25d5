#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "demonlab/markov.hpp"
#include "demonlab/observables.hpp"

namespace demonlab {

// lo, lo + step, ... up to hi (inclusive within 1e-9 step).
std::vector<double> arange(double lo, double hi, double step);

// 0.3 to 6 in steps of 0.05, then 6.5 to 20 in steps of 0.5.
std::vector<double> default_T_grid();

enum class ModelSelector { Full, Reduced, Both };

const char* to_string(ModelSelector m) noexcept;
ModelSelector parse_model_selector(const std::string& s);

struct SweepAxis {
  std::string name;  // SystemParams field
  std::vector<double> values;
};

struct SweepSpec {
  std::string name = "sweep";
  ModelSelector model = ModelSelector::Full;
  std::vector<std::pair<std::string, double>> fixed;
  std::vector<SweepAxis> axes;  // first axis varies slowest
  std::string figure;           // output layout tag, may be empty

  // Throws InvalidArgument on unknown names, empty or unordered axes.
  void validate() const;
  std::size_t size() const;
};

struct SweepRow {
  std::size_t index = 0;
  std::vector<double> coords;  // one per axis
  SystemParams params;
  CycleResult result;
  bool ok = false;
  std::string error;  // set when !ok
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid order, full before reduced per point
  double seconds = 0.0;
  int workers = 1;
};

// DEMONLAB_WORKERS if set and positive, else the hardware concurrency.
int default_workers();

struct SweepOptions {
  int workers = 0;  // <= 0: default_workers()
  bool validate = true;
  // Called after each finished row from the worker thread (serialized).
  std::function<void(const SweepRow&)> progress;
};

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

// Runs `task(i)` for i in [0, n) on a bounded pool.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& task);

// Indices of strict interior local maxima of y after [1, 2, 1]/4 smoothing.
std::vector<std::size_t> local_maxima(const std::vector<double>& y);

// X(T) on a T grid, one converged_transfer per point.
std::vector<CycleResult> transfer_curve(const SystemParams& p,
                                        const std::vector<double>& T_values,
                                        const ModelFactory& factory = full_model_factory(),
                                        int workers = 0, bool validate = false);

struct InnerMaximum {
  double T = 0.0;
  double j_av = 0.0;
  bool at_boundary = false;
};

// max over T in [T_lo, T_hi] of J_av: grid scan with `T_step`, then golden
// section around the best grid point.
InnerMaximum max_current_over_T(const SystemParams& p, double T_lo, double T_hi,
                                double T_step, int workers = 0);

struct GammaOptOptions {
  double gamma_lo = 0.1;
  double gamma_hi = 20.0;
  int scan_points = 9;    // log-spaced outer scan
  double T_lo = 0.0;      // <= 0: t2 + 0.01
  double T_hi = 10.0;
  double T_step = 0.1;
  double log_tol = 1e-3;  // golden-section stop on log(gamma)
  int workers = 0;
};

struct GammaOptTrace {
  double gamma = 0.0;
  double T_opt = 0.0;
  double j_av = 0.0;
};

struct GammaOptResult {
  double gamma_opt = 0.0;
  double T_opt = 0.0;
  double j_av_max = 0.0;
  double product = 0.0;  // gamma_opt (n_C + 1/2)
  bool at_gamma_boundary = false;
  bool at_T_boundary = false;
  std::vector<GammaOptTrace> trace;  // every outer evaluation, in call order
};

GammaOptResult gamma_opt(const SystemParams& p, const GammaOptOptions& options = {});

struct ConvergenceRow {
  double gamma = 0.0;
  double T = 0.0;
  int n = 0;
  double x_cold = 0.0;
  double x_hot = 0.0;
};

// X_{C,n}, X_{H,n} from the steady state for n up to the averaging-window end.
std::vector<ConvergenceRow> convergence_study(const SystemParams& p,
                                              const std::vector<double>& gammas,
                                              const std::vector<double>& T_values);

}  // namespace demonlab
