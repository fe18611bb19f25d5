#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "demonlab/engine.hpp"
#include "demonlab/protocol.hpp"

namespace demonlab {

// Von Neumann entropy in nats; eigenvalues below zero are clipped.
double entropy(const DensityMatrix& rho);

struct SubsystemEntropies {
  double cmh = 0.0;    // S_{C-M-H}, demon traced out
  double demon = 0.0;  // S_D
  double total = 0.0;  // S_tot
};

SubsystemEntropies subsystem_entropies(const DensityMatrix& rho);

// Excited-state populations on the full layout.
struct Populations {
  double cold_1 = 0.0;    // P(|1_C>)
  double qutrit_2 = 0.0;  // P(|2_M>)
  double hot_1 = 0.0;     // P(|1_H>)
  double demon_1 = 0.0;   // P(|1_D>)
};

Populations populations(const DensityMatrix& rho);

// Closed-form instantaneous-gate bound tr{|2_M><2_M| rho_ss}.
double x_ss_inst(const SystemParams& p);

// Integral of tr{j_side rho(t)} over one pass of the schedule starting from
// `start`, computed exactly with the current-augmented generator.
double integrate_transfer(const Model& model, const Schedule& schedule,
                          const DensityMatrix& start, Side side,
                          PropagatorCache* cache = &default_cache());

// Cycles averaged by the repeated-propagation check: X_{C,n} is averaged over
// cycles [last - 9, last]. `last` lies in [100, 200] ([200, 400] for
// gamma >= 30) and moves to the upper end as T shrinks:
//   last = lo + round((hi - lo) * min(1, 1/T)).
struct AveragingWindow {
  int first = 0;
  int last = 0;
};

AveragingWindow averaging_window(double gamma, double T);

struct CycleResult {
  std::string model;
  double T = 0.0;
  double gamma = 0.0;
  double x_cold = 0.0;    // limit-cycle X_C
  double x_hot = 0.0;     // limit-cycle X_H
  double x = 0.0;         // converged transferred excitations (= x_cold)
  double j_av = 0.0;      // x / T
  // Repeated propagation from the steady state.
  double x_repeated = 0.0;
  double spread = 0.0;    // max - min of X_{C,n} over the window
  AveragingWindow window;
  double discrepancy = 0.0;  // |x - x_repeated|
  double residual = 0.0;     // fixed-point residual
  bool converged = false;    // |X_C - X_H| and residual within tolerance
  bool validated = false;    // discrepancy within tolerance
};

struct TransferOptions {
  bool validate = true;
  PropagatorCache* cache = &default_cache();
};

CycleResult converged_transfer(const Model& model,
                               const TransferOptions& options = {});
CycleResult converged_transfer(const SystemParams& p,
                               const TransferOptions& options = {});

// X_{C,n} and X_{H,n} for n = 0 .. n_cycles - 1 from the steady state.
std::vector<std::array<double, 2>> per_cycle_transfer(
    const Model& model, int n_cycles, PropagatorCache* cache = &default_cache());

using ModelFactory =
    std::function<std::unique_ptr<Model>(const SystemParams&)>;

ModelFactory full_model_factory();

struct Rectification {
  double j_forward = 0.0;  // T_C and T_H swapped (T_C > T_H for defaults)
  double j_reverse = 0.0;  // as given
  double ratio = 0.0;      // -j_forward / j_reverse
};

// Throws InvalidArgument when the reverse current vanishes (|J_av,r| <=
// 1e-12), e.g. at J = 0.
Rectification rectification(const SystemParams& p,
                            const ModelFactory& factory = full_model_factory());

}  // namespace demonlab
