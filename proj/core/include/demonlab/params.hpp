#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace demonlab {

// Physical constants of the demon setup, all in units of the qutrit-qubit
// coupling J (frequencies, temperatures, rates) or 1/J (times).
struct SystemParams {
  double J = 1.0;
  double omega_C = 3500.0;
  double omega_H = 2000.0;
  // Drops out in the rotating frame; kept for completeness.
  double omega_D = 0.0;
  double T_C = 2000.0;
  double T_H = 3000.0;
  double gamma = 2.0;
  double gamma_D_on = 8.0;
  double tau_Y = 0.02;
  double tau_CZ = 0.1;
  double T_cycle = 1.0;

  // Throws Error(InvalidArgument) naming the offending field.
  void validate() const;

  // t1 = 2 tau_Y + tau_CZ, end of the record step.
  double step_duration() const { return 2.0 * tau_Y + tau_CZ; }
  // t2 = 2 t1, end of the act step.
  double gate_sequence_duration() const { return 2.0 * step_duration(); }
};

// Names accepted by get/set_param, in declaration order.
const std::vector<std::string>& param_names();
bool is_param_name(std::string_view name);
double get_param(const SystemParams& p, std::string_view name);
void set_param(SystemParams& p, std::string_view name, double value);

struct DerivedParams {
  double n_C = 0.0;
  double n_H = 0.0;
  double lambda_C = 0.0;
  double lambda_H = 0.0;
};

// Bose occupation 1/(e^{w/T} - 1).
double bose_occupation(double omega, double temperature);
// Thermal excited population of a qubit, 1/(1 + e^{w/T}).
double thermal_excitation(double omega, double temperature);

DerivedParams derive_params(const SystemParams& p);

}  // namespace demonlab
