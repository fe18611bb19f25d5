#include "demonlab/params.hpp"

#include <cmath>
#include <sstream>

#include "demonlab/common.hpp"

namespace demonlab {

namespace {

[[noreturn]] void reject(const std::string& field, double value,
                         const std::string& rule) {
  std::ostringstream os;
  os << "invalid parameter " << field << " = " << value << ": " << rule;
  throw Error(ErrorKind::InvalidArgument, os.str());
}

struct Field {
  const char* name;
  double SystemParams::*member;
};

constexpr Field kFields[] = {
    {"J", &SystemParams::J},
    {"omega_C", &SystemParams::omega_C},
    {"omega_H", &SystemParams::omega_H},
    {"omega_D", &SystemParams::omega_D},
    {"T_C", &SystemParams::T_C},
    {"T_H", &SystemParams::T_H},
    {"gamma", &SystemParams::gamma},
    {"gamma_D_on", &SystemParams::gamma_D_on},
    {"tau_Y", &SystemParams::tau_Y},
    {"tau_CZ", &SystemParams::tau_CZ},
    {"T_cycle", &SystemParams::T_cycle},
};

const Field* find_field(std::string_view name) {
  if (name == "T") name = "T_cycle";
  for (const auto& f : kFields) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

}  // namespace

void SystemParams::validate() const {
  for (const Field& f : kFields) {
    const double v = this->*(f.member);
    if (!std::isfinite(v)) reject(f.name, v, "must be finite");
  }
  if (J < 0) reject("J", J, "must be >= 0");
  if (omega_C <= 0) reject("omega_C", omega_C, "must be > 0");
  if (omega_H <= 0) reject("omega_H", omega_H, "must be > 0");
  if (T_C <= 0) reject("T_C", T_C, "temperature must be > 0");
  if (T_H <= 0) reject("T_H", T_H, "temperature must be > 0");
  if (gamma < 0) reject("gamma", gamma, "must be >= 0");
  if (gamma_D_on < 0) reject("gamma_D_on", gamma_D_on, "must be >= 0");
  if (tau_Y <= 0) reject("tau_Y", tau_Y, "must be > 0");
  if (tau_CZ <= 0) reject("tau_CZ", tau_CZ, "must be > 0");
  if (T_cycle < gate_sequence_duration()) {
    std::ostringstream os;
    os << "cycle shorter than gate sequence (needs >= "
       << gate_sequence_duration() << ")";
    reject("T_cycle", T_cycle, os.str());
  }
}

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : kFields) out.emplace_back(f.name);
    return out;
  }();
  return names;
}

bool is_param_name(std::string_view name) { return find_field(name) != nullptr; }

double get_param(const SystemParams& p, std::string_view name) {
  const Field* f = find_field(name);
  if (!f) {
    throw Error(ErrorKind::InvalidArgument,
                "unknown parameter '" + std::string(name) + "'");
  }
  return p.*(f->member);
}

void set_param(SystemParams& p, std::string_view name, double value) {
  const Field* f = find_field(name);
  if (!f) {
    throw Error(ErrorKind::InvalidArgument,
                "unknown parameter '" + std::string(name) + "'");
  }
  p.*(f->member) = value;
}

double bose_occupation(double omega, double temperature) {
  if (!(temperature > 0)) {
    throw Error(ErrorKind::InvalidArgument,
                "bose_occupation: temperature must be > 0");
  }
  return 1.0 / std::expm1(omega / temperature);
}

double thermal_excitation(double omega, double temperature) {
  if (!(temperature > 0)) {
    throw Error(ErrorKind::InvalidArgument,
                "thermal_excitation: temperature must be > 0");
  }
  return 1.0 / (1.0 + std::exp(omega / temperature));
}

DerivedParams derive_params(const SystemParams& p) {
  if (!(p.T_C > 0) || !(p.T_H > 0)) {
    throw Error(ErrorKind::InvalidArgument,
                "derive_params: non-positive bath temperature");
  }
  DerivedParams d;
  d.n_C = bose_occupation(p.omega_C, p.T_C);
  d.n_H = bose_occupation(p.omega_H, p.T_H);
  d.lambda_C = thermal_excitation(p.omega_C, p.T_C);
  d.lambda_H = thermal_excitation(p.omega_H, p.T_H);
  return d;
}

}  // namespace demonlab
