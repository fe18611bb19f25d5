#include "demonlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace demonlab {

double entropy(const DensityMatrix& rho) {
  const Matrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double l = es.eigenvalues()(k);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

SubsystemEntropies subsystem_entropies(const DensityMatrix& rho) {
  static const Subsystem cmh[] = {Subsystem::C, Subsystem::M, Subsystem::H};
  static const Subsystem d[] = {Subsystem::D};
  SubsystemEntropies out;
  out.cmh = entropy(partial_trace(rho, cmh));
  out.demon = entropy(partial_trace(rho, d));
  out.total = entropy(rho);
  return out;
}

Populations populations(const DensityMatrix& rho) {
  const SubsystemLayout& lay = rho.layout();
  const Matrix& m = rho.matrix();
  Populations p;
  for (int i = 0; i < lay.dim(); ++i) {
    const double w = m(i, i).real();
    if (lay.contains(Subsystem::C) && lay.label(i, Subsystem::C) == 1) p.cold_1 += w;
    if (lay.contains(Subsystem::M) && lay.label(i, Subsystem::M) == 2) p.qutrit_2 += w;
    if (lay.contains(Subsystem::H) && lay.label(i, Subsystem::H) == 1) p.hot_1 += w;
    if (lay.contains(Subsystem::D) && lay.label(i, Subsystem::D) == 1) p.demon_1 += w;
  }
  return p;
}

double x_ss_inst(const SystemParams& p) {
  if (!(p.T_C > 0) || !(p.T_H > 0)) {
    throw Error(ErrorKind::InvalidArgument, "x_ss_inst: non-positive temperature");
  }
  const double wc = std::exp(-p.omega_C / p.T_C);
  const double wh = std::exp(-p.omega_H / p.T_H);
  return wc / (1.0 + wh + wc);
}

double integrate_transfer(const Model& model, const Schedule& schedule,
                          const DensityMatrix& start, Side side,
                          PropagatorCache* cache) {
  const auto props = segment_propagators(
      model, schedule, {.sector = true, .accumulate_currents = true}, cache);
  const Propagator total = compose(props);
  const Vector v = total.space().vectorize(start);
  return total.integrals(v)(side == Side::Cold ? 0 : 1);
}

AveragingWindow averaging_window(double gamma, double T) {
  const bool wide = gamma >= 30.0;
  const int lo = wide ? 200 : 100;
  const int hi = wide ? 400 : 200;
  const double frac = T > 0.0 ? std::min(1.0, 1.0 / T) : 1.0;
  AveragingWindow w;
  w.last = lo + static_cast<int>(std::lround((hi - lo) * frac));
  w.first = w.last - 9;
  return w;
}

namespace {

Propagator augmented_cycle(const Model& model, PropagatorCache* cache) {
  const Schedule schedule = build_cycle(model.params());
  return compose(segment_propagators(
      model, schedule, {.sector = true, .accumulate_currents = true}, cache));
}

}  // namespace

CycleResult converged_transfer(const Model& model, const TransferOptions& options) {
  const SystemParams& p = model.params();
  const NumericalPolicy pol = numerical_policy();
  const Propagator cycle = augmented_cycle(model, options.cache);
  const FixedPoint fp = limit_cycle_vector(cycle);

  CycleResult r;
  r.model = model.name();
  r.T = p.T_cycle;
  r.gamma = p.gamma;
  const Eigen::VectorXd x = cycle.integrals(fp.state);
  r.x_cold = x(0);
  r.x_hot = x(1);
  r.x = r.x_cold;
  r.j_av = r.x / r.T;
  r.residual = fp.residual;
  r.converged = std::abs(r.x_cold - r.x_hot) <= pol.convergence_tol &&
                fp.residual <= 1e-8;

  r.window = averaging_window(p.gamma, p.T_cycle);
  if (options.validate) {
    Vector v = cycle.space().vectorize(steady_state(model));
    const auto m = cycle.map();
    double sum = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    for (int n = 0; n <= r.window.last; ++n) {
      if (n >= r.window.first) {
        const double xc = cycle.integrals(v)(0);
        sum += xc;
        lo = n == r.window.first ? xc : std::min(lo, xc);
        hi = n == r.window.first ? xc : std::max(hi, xc);
      }
      v = m * v;
    }
    r.x_repeated = sum / (r.window.last - r.window.first + 1);
    r.spread = hi - lo;
    r.discrepancy = std::abs(r.x - r.x_repeated);
    r.validated = r.discrepancy <= pol.convergence_tol;
  }
  return r;
}

CycleResult converged_transfer(const SystemParams& p, const TransferOptions& options) {
  return converged_transfer(FullModel(p), options);
}

std::vector<std::array<double, 2>> per_cycle_transfer(const Model& model,
                                                      int n_cycles,
                                                      PropagatorCache* cache) {
  const Propagator cycle = augmented_cycle(model, cache);
  Vector v = cycle.space().vectorize(steady_state(model));
  std::vector<std::array<double, 2>> out;
  out.reserve(std::max(0, n_cycles));
  for (int n = 0; n < n_cycles; ++n) {
    const Eigen::VectorXd x = cycle.integrals(v);
    out.push_back({x(0), x(1)});
    v = cycle.apply(v);
  }
  return out;
}

ModelFactory full_model_factory() {
  return [](const SystemParams& p) -> std::unique_ptr<Model> {
    return std::make_unique<FullModel>(p);
  };
}

Rectification rectification(const SystemParams& p, const ModelFactory& factory) {
  if (p.J == 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "rectification undefined: J = 0 gives vanishing currents");
  }
  SystemParams forward = p;
  std::swap(forward.T_C, forward.T_H);
  Rectification r;
  r.j_forward = converged_transfer(*factory(forward), {.validate = false}).j_av;
  r.j_reverse = converged_transfer(*factory(p), {.validate = false}).j_av;
  if (std::abs(r.j_reverse) <= 1e-12) {
    std::ostringstream os;
    os << "rectification undefined: reverse-bias current " << r.j_reverse;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  r.ratio = -r.j_forward / r.j_reverse;
  return r;
}

}  // namespace demonlab
