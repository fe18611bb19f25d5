#include "demonlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace demonlab {

std::vector<double> arange(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw Error(ErrorKind::InvalidArgument, "arange: need finite lo <= hi and step > 0");
  }
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    // Round to 12 digits so grid values print and compare cleanly.
    out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
  }
  return out;
}

std::vector<double> default_T_grid() {
  std::vector<double> t = arange(0.3, 6.0, 0.05);
  for (double x : arange(6.5, 20.0, 0.5)) t.push_back(x);
  return t;
}

const char* to_string(ModelSelector m) noexcept {
  switch (m) {
    case ModelSelector::Full:
      return "full";
    case ModelSelector::Reduced:
      return "reduced";
    case ModelSelector::Both:
      return "both";
  }
  return "?";
}

ModelSelector parse_model_selector(const std::string& s) {
  if (s == "full") return ModelSelector::Full;
  if (s == "reduced") return ModelSelector::Reduced;
  if (s == "both") return ModelSelector::Both;
  throw Error(ErrorKind::InvalidArgument,
              "unknown model '" + s + "' (expected full, reduced or both)");
}

void SweepSpec::validate() const {
  for (const auto& [name, value] : fixed) {
    if (!is_param_name(name)) {
      throw Error(ErrorKind::InvalidArgument, "sweep: unknown fixed parameter '" + name + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::InvalidArgument, "sweep: fixed '" + name + "' is not finite");
    }
  }
  if (axes.empty()) throw Error(ErrorKind::InvalidArgument, "sweep: no axes");
  for (const auto& axis : axes) {
    if (!is_param_name(axis.name)) {
      throw Error(ErrorKind::InvalidArgument, "sweep: unknown axis '" + axis.name + "'");
    }
    if (axis.values.empty()) {
      throw Error(ErrorKind::InvalidArgument, "sweep: axis '" + axis.name + "' is empty");
    }
    for (std::size_t k = 0; k < axis.values.size(); ++k) {
      if (!std::isfinite(axis.values[k]) ||
          (k > 0 && !(axis.values[k] > axis.values[k - 1]))) {
        throw Error(ErrorKind::InvalidArgument,
                    "sweep: axis '" + axis.name + "' must be finite and strictly increasing");
      }
    }
  }
}

std::size_t SweepSpec::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

int default_workers() {
  if (const char* env = std::getenv("DEMONLAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& task) {
  if (workers <= 0) workers = default_workers();
  const auto nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (std::size_t w = 0; w < nthreads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  spec.validate();
  SystemParams base;
  for (const auto& [name, value] : spec.fixed) set_param(base, name, value);

  std::vector<ModelFactory> factories;
  std::vector<std::string> names;
  if (spec.model != ModelSelector::Reduced) {
    factories.push_back(full_model_factory());
    names.emplace_back("full");
  }
  if (spec.model != ModelSelector::Full) {
    factories.push_back(reduced_model_factory());
    names.emplace_back("reduced");
  }

  const std::size_t points = spec.size();
  SweepResult out;
  out.rows.resize(points * factories.size());
  out.workers = options.workers > 0 ? options.workers : default_workers();
  std::mutex progress_mutex;
  const auto start = std::chrono::steady_clock::now();

  parallel_for(out.rows.size(), out.workers, [&](std::size_t r) {
    const std::size_t point = r / factories.size();
    SweepRow& row = out.rows[r];
    row.index = point;
    row.params = base;
    std::size_t rest = point;
    row.coords.assign(spec.axes.size(), 0.0);
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& values = spec.axes[a].values;
      row.coords[a] = values[rest % values.size()];
      rest /= values.size();
    }
    try {
      for (std::size_t a = 0; a < spec.axes.size(); ++a) {
        set_param(row.params, spec.axes[a].name, row.coords[a]);
      }
      row.params.validate();
      const auto model = factories[r % factories.size()](row.params);
      row.result = converged_transfer(*model, {.validate = options.validate});
      row.ok = row.result.converged && (!options.validate || row.result.validated);
      if (!row.ok) row.error = "not converged";
    } catch (const Error& e) {
      row.ok = false;
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
      row.result.T = row.params.T_cycle;
      row.result.gamma = row.params.gamma;
      row.result.model = names[r % factories.size()];
    }
    if (options.progress) {
      std::lock_guard lock(progress_mutex);
      options.progress(row);
    }
  });
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> s(y);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    s[i] = 0.25 * y[i - 1] + 0.5 * y[i] + 0.25 * y[i + 1];
  }
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i] > s[i - 1] && s[i] > s[i + 1]) peaks.push_back(i);
  }
  return peaks;
}

std::vector<CycleResult> transfer_curve(const SystemParams& p,
                                        const std::vector<double>& T_values,
                                        const ModelFactory& factory, int workers,
                                        bool validate) {
  std::vector<CycleResult> out(T_values.size());
  parallel_for(T_values.size(), workers, [&](std::size_t i) {
    SystemParams q = p;
    q.T_cycle = T_values[i];
    out[i] = converged_transfer(*factory(q), {.validate = validate});
  });
  return out;
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2

// Golden-section maximization of f on [a, b].
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

InnerMaximum max_current_over_T(const SystemParams& p, double T_lo, double T_hi,
                                double T_step, int workers) {
  if (!(T_hi > T_lo)) {
    throw Error(ErrorKind::InvalidArgument, "max over T: empty interval");
  }
  std::vector<double> grid = arange(T_lo, T_hi, T_step);
  if (grid.back() < T_hi - 1e-12) grid.push_back(T_hi);
  const auto curve = transfer_curve(p, grid, full_model_factory(), workers);
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].j_av > curve[best].j_av) best = i;
  }
  InnerMaximum m{grid[best], curve[best].j_av, false};
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  auto j_at = [&](double T) {
    SystemParams q = p;
    q.T_cycle = T;
    return converged_transfer(q, {.validate = false}).j_av;
  };
  const auto [T_star, j_star] = golden_max(j_at, a, b, 1e-4);
  if (j_star > m.j_av) {
    m.T = T_star;
    m.j_av = j_star;
  }
  m.at_boundary = m.T - T_lo < 1e-3 || T_hi - m.T < 1e-3;
  return m;
}

GammaOptResult gamma_opt(const SystemParams& p, const GammaOptOptions& o) {
  if (!(o.gamma_lo > 0.0) || !(o.gamma_hi > o.gamma_lo) || o.scan_points < 3) {
    throw Error(ErrorKind::InvalidArgument,
                "gamma_opt: need 0 < gamma_lo < gamma_hi and >= 3 scan points");
  }
  const double T_lo = o.T_lo > 0.0 ? o.T_lo : p.gate_sequence_duration() + 0.01;
  GammaOptResult r;
  auto inner = [&](double log_gamma) {
    SystemParams q = p;
    q.gamma = std::exp(log_gamma);
    const InnerMaximum m = max_current_over_T(q, T_lo, o.T_hi, o.T_step, o.workers);
    r.trace.push_back({q.gamma, m.T, m.j_av});
    return m;
  };
  const double l0 = std::log(o.gamma_lo);
  const double l1 = std::log(o.gamma_hi);
  std::vector<double> logs(o.scan_points);
  std::vector<InnerMaximum> scan;
  for (int k = 0; k < o.scan_points; ++k) {
    logs[k] = l0 + (l1 - l0) * k / (o.scan_points - 1);
    scan.push_back(inner(logs[k]));
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < scan.size(); ++k) {
    if (scan[k].j_av > scan[best].j_av) best = k;
  }
  r.at_gamma_boundary = best == 0 || best + 1 == scan.size();
  double g_log = logs[best];
  InnerMaximum m = scan[best];
  if (!r.at_gamma_boundary) {
    std::vector<std::pair<double, InnerMaximum>> seen;
    const auto [lg, j] = golden_max(
        [&](double x) {
          seen.emplace_back(x, inner(x));
          return seen.back().second.j_av;
        },
        logs[best - 1], logs[best + 1], o.log_tol);
    if (j > m.j_av) {
      g_log = lg;
      for (const auto& [x, mx] : seen) {
        if (x == lg) m = mx;
      }
    }
  }
  r.gamma_opt = std::exp(g_log);
  r.T_opt = m.T;
  r.j_av_max = m.j_av;
  r.at_T_boundary = m.at_boundary;
  const DerivedParams d = derive_params(p);
  r.product = r.gamma_opt * (d.n_C + 0.5);
  return r;
}

std::vector<ConvergenceRow> convergence_study(const SystemParams& p,
                                              const std::vector<double>& gammas,
                                              const std::vector<double>& T_values) {
  std::vector<ConvergenceRow> out;
  for (double g : gammas) {
    for (double T : T_values) {
      SystemParams q = p;
      q.gamma = g;
      q.T_cycle = T;
      q.validate();
      const int n = averaging_window(g, T).last + 1;
      const auto series = per_cycle_transfer(FullModel(q), n);
      for (int k = 0; k < n; ++k) {
        out.push_back({g, T, k, series[k][0], series[k][1]});
      }
    }
  }
  return out;
}

}  // namespace demonlab
