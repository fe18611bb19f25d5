#pragma once

// File formats of the demonlab CLI: CSV tables, sweep spec files and run
// manifests. Column orders are part of the output schema (kSchemaVersion).

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "demonlab/markov.hpp"
#include "demonlab/protocol.hpp"
#include "demonlab/sweep.hpp"

namespace demonlab::cli {

inline constexpr int kSchemaVersion = 1;

// Shortest round-trippable-enough decimal form used for every CSV number.
std::string format_number(double x);
// RFC 4180 quoting: fields with comma, quote, CR or LF are quoted.
std::string csv_field(const std::string& s);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void header(const std::vector<std::string>& names);
  CsvWriter& operator<<(double x);
  CsvWriter& operator<<(int x);
  CsvWriter& operator<<(const std::string& s);
  CsvWriter& operator<<(const char* s) { return *this << std::string(s); }
  void end_row();

 private:
  void sep();
  std::ostream& os_;
  bool first_ = true;
};

// Optional display scale: J in MHz. Adds t_us / J_av_MHz columns only.
struct DisplayUnits {
  std::optional<double> J_MHz;
};

// fig2: t, P_1C, P_2M, P_1H, P_1D, S_CMH, S_D, S_tot [, t_us]
void write_time_series(std::ostream& os, const TimeSeries& ts,
                       const DisplayUnits& units = {});

// T, gamma, X, J_av, X_Cn_spread, model, X_C, X_H, X_repeated,
// window_first, window_last, converged, validated [, J_av_MHz]
std::vector<std::string> cycle_columns(const DisplayUnits& units = {});
void write_cycle_row(CsvWriter& w, const CycleResult& r, const DisplayUnits& units = {});
void write_cycle_results(std::ostream& os, const std::vector<CycleResult>& rows,
                         const DisplayUnits& units = {});

// Sweep table: one column per axis, then the cycle columns, then flag, error.
void write_sweep_table(std::ostream& os, const SweepSpec& spec,
                       const SweepResult& result, const DisplayUnits& units = {});

// fig3: gamma, T, model, X, J_av, flag (long format)
void write_fig3(std::ostream& os, const std::vector<CycleResult>& rows,
                const std::vector<bool>& flags);

// s2: gamma, T, n, X_C, X_H
void write_convergence(std::ostream& os, const std::vector<ConvergenceRow>& rows);

struct GammaOptRow {
  double n_C = 0.0;
  double T_H = 0.0;
  double tau_CZ = 0.0;
  GammaOptResult result;
};

// s5c: n_C, T_H, tau_CZ, gamma_opt, product, T_opt, J_av_max, boundary
void write_s5c(std::ostream& os, const std::vector<GammaOptRow>& rows);

// Sweep spec (JSON):
//   {"name": str, "model": "full"|"reduced"|"both", "figure": str,
//    "fixed": {param: number, ...},
//    "axes": [{"name": param, "values": [...]} |
//             {"name": param, "range": [lo, hi, step]} |
//             {"name": param, "ranges": [[lo, hi, step], ...]}],
//    "validate": bool}
// Unknown keys are rejected.
SweepSpec parse_sweep_spec(const nlohmann::json& j, bool* validate = nullptr);
SweepSpec load_sweep_spec(const std::filesystem::path& path, bool* validate = nullptr);

nlohmann::json params_json(const SystemParams& p);
nlohmann::json policy_json(const NumericalPolicy& pol);
std::string version_string();

}  // namespace demonlab::cli
