#pragma once

// Born-Markov-secular reduction: the bath qubits are traced out and act on
// the qutrit through rate equations. The remaining qutrit (x) demon model has
// no free Hamiltonian in the rotating frame, only controls and dissipators.

#include <complex>
#include <string>
#include <utility>

#include "demonlab/model.hpp"
#include "demonlab/observables.hpp"

namespace demonlab {

struct ReducedRates {
  double cold_down = 0.0;  // 8 J^2 (1 - lambda_C) / (gamma (2 n_C + 1))
  double cold_up = 0.0;    // 8 J^2 lambda_C / (gamma (2 n_C + 1))
  double hot_down = 0.0;   // 4 J^2 (1 - lambda_H) / (gamma (2 n_H + 1))
  double hot_up = 0.0;     // 4 J^2 lambda_H / (gamma (2 n_H + 1))
};

// Requires gamma > 0.
ReducedRates reduced_rates(const SystemParams& p);

// Thermal correlations of a bath qubit, (<s+(t) s->, <s-(t) s+>), with decay
// rate gamma (n + 1/2) and carriers +-omega. Requires t >= 0.
std::pair<cplx, cplx> bath_correlation(const SystemParams& p, Side side, double t);

// Real parts of the one-sided transforms, (gamma+(w), gamma-(w)):
//   gamma+ = gamma lambda (2n+1) / ((omega_s - w)^2 + gamma^2 (n+1/2)^2)
//   gamma- = gamma (1-lambda) (2n+1) / ((omega_s + w)^2 + gamma^2 (n+1/2)^2)
std::pair<double, double> correlation_spectra(const SystemParams& p, Side side,
                                              double omega);

// Qutrit (x) demon with the rates above:
//   cold_down |0><2|, cold_up |2><0|, hot_down |0><1|, hot_up |1><0|.
class ReducedModel final : public Model {
 public:
  explicit ReducedModel(const SystemParams& params);

  std::string name() const override { return "reduced"; }
  const SubsystemLayout& layout() const override { return layout_; }
  Operator hamiltonian(const Controls& controls) const override;
  std::vector<JumpTerm> jump_terms(const DissipatorSet& active) const override;
  // Rate-equation currents: cold_up P0 - cold_down P2 and
  // hot_down P1 - hot_up P0.
  Operator current_operator(Side side) const override;

  const ReducedRates& rates() const noexcept { return rates_; }

 private:
  SubsystemLayout layout_;
  ReducedRates rates_;
};

ModelFactory reduced_model_factory();

CycleResult build_reduced_cycle(const SystemParams& p,
                                const TransferOptions& options = {});

enum class MarkovRegime { Markovian, Borderline, NonMarkovian };

const char* to_string(MarkovRegime r) noexcept;

struct MarkovValidity {
  double cold_ratio = 0.0;  // gamma (n_C + 1/2) / (sqrt 2 J)
  double hot_ratio = 0.0;   // gamma (n_H + 1/2) / J
  // Markovian if both ratios >= 10, borderline if both >= 1.
  MarkovRegime regime = MarkovRegime::NonMarkovian;
};

MarkovValidity markov_validity(const SystemParams& p);

}  // namespace demonlab
