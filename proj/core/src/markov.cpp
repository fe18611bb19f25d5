#include "demonlab/markov.hpp"

#include <algorithm>
#include <cmath>

namespace demonlab {

ReducedRates reduced_rates(const SystemParams& p) {
  if (!(p.gamma > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "reduced rates require gamma > 0");
  }
  const DerivedParams d = derive_params(p);
  const double j2 = p.J * p.J;
  ReducedRates r;
  r.cold_down = 8.0 * j2 * (1.0 - d.lambda_C) / (p.gamma * (2.0 * d.n_C + 1.0));
  r.cold_up = 8.0 * j2 * d.lambda_C / (p.gamma * (2.0 * d.n_C + 1.0));
  r.hot_down = 4.0 * j2 * (1.0 - d.lambda_H) / (p.gamma * (2.0 * d.n_H + 1.0));
  r.hot_up = 4.0 * j2 * d.lambda_H / (p.gamma * (2.0 * d.n_H + 1.0));
  return r;
}

namespace {

struct BathSide {
  double omega;
  double n;
  double lambda;
};

BathSide bath_side(const SystemParams& p, Side side) {
  const DerivedParams d = derive_params(p);
  if (side == Side::Cold) return {p.omega_C, d.n_C, d.lambda_C};
  return {p.omega_H, d.n_H, d.lambda_H};
}

}  // namespace

std::pair<cplx, cplx> bath_correlation(const SystemParams& p, Side side, double t) {
  if (!(t >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "bath correlation: t must be >= 0");
  }
  const BathSide b = bath_side(p, side);
  const double decay = std::exp(-p.gamma * (b.n + 0.5) * t);
  const cplx phase = std::polar(1.0, b.omega * t);
  return {b.lambda * decay * phase, (1.0 - b.lambda) * decay * std::conj(phase)};
}

std::pair<double, double> correlation_spectra(const SystemParams& p, Side side,
                                              double omega) {
  const BathSide b = bath_side(p, side);
  const double width = p.gamma * (b.n + 0.5);
  const double w2 = width * width;
  const double num = p.gamma * (2.0 * b.n + 1.0);
  const double up = b.lambda * num / ((b.omega - omega) * (b.omega - omega) + w2);
  const double down =
      (1.0 - b.lambda) * num / ((b.omega + omega) * (b.omega + omega) + w2);
  return {up, down};
}

// ---------------------------------------------------------------------------

ReducedModel::ReducedModel(const SystemParams& params)
    : Model(params),
      layout_(SubsystemLayout::qutrit_demon()),
      rates_(reduced_rates(params)) {}

Operator ReducedModel::hamiltonian(const Controls& controls) const {
  return control_hamiltonian(layout_, controls);
}

std::vector<JumpTerm> ReducedModel::jump_terms(const DissipatorSet& active) const {
  using local::transition;
  std::vector<JumpTerm> out;
  if (active.cold) {
    out.push_back({embed(transition(3, 0, 2), Subsystem::M, layout_).matrix(),
                   rates_.cold_down});
    out.push_back({embed(transition(3, 2, 0), Subsystem::M, layout_).matrix(),
                   rates_.cold_up});
  }
  if (active.hot) {
    out.push_back({embed(transition(3, 0, 1), Subsystem::M, layout_).matrix(),
                   rates_.hot_down});
    out.push_back({embed(transition(3, 1, 0), Subsystem::M, layout_).matrix(),
                   rates_.hot_up});
  }
  if (active.demon) {
    out.push_back({embed(local::sigma_minus(), Subsystem::D, layout_).matrix(),
                   params().gamma_D_on});
  }
  return out;
}

Operator ReducedModel::current_operator(Side side) const {
  using local::projector;
  Matrix q = Matrix::Zero(3, 3);
  if (side == Side::Cold) {
    q = rates_.cold_up * projector(3, 0) - rates_.cold_down * projector(3, 2);
  } else {
    q = rates_.hot_down * projector(3, 1) - rates_.hot_up * projector(3, 0);
  }
  return embed(q, Subsystem::M, layout_);
}

ModelFactory reduced_model_factory() {
  return [](const SystemParams& p) -> std::unique_ptr<Model> {
    return std::make_unique<ReducedModel>(p);
  };
}

CycleResult build_reduced_cycle(const SystemParams& p, const TransferOptions& options) {
  return converged_transfer(ReducedModel(p), options);
}

// ---------------------------------------------------------------------------

const char* to_string(MarkovRegime r) noexcept {
  switch (r) {
    case MarkovRegime::Markovian:
      return "markovian";
    case MarkovRegime::Borderline:
      return "borderline";
    case MarkovRegime::NonMarkovian:
      return "non-markovian";
  }
  return "?";
}

MarkovValidity markov_validity(const SystemParams& p) {
  const DerivedParams d = derive_params(p);
  MarkovValidity v;
  v.cold_ratio = p.gamma * (d.n_C + 0.5) / (std::sqrt(2.0) * p.J);
  v.hot_ratio = p.gamma * (d.n_H + 0.5) / p.J;
  const double worst = std::min(v.cold_ratio, v.hot_ratio);
  if (worst >= 10.0) {
    v.regime = MarkovRegime::Markovian;
  } else if (worst >= 1.0) {
    v.regime = MarkovRegime::Borderline;
  }
  return v;
}

}  // namespace demonlab
