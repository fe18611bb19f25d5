#include "demonlab/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#ifndef DEMONLAB_VERSION
#define DEMONLAB_VERSION "0.0.0"
#endif
#ifndef DEMONLAB_GIT_REVISION
#define DEMONLAB_GIT_REVISION "unknown"
#endif

namespace demonlab::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::sep() {
  if (!first_) os_ << ',';
  first_ = false;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (const auto& n : names) *this << n;
  end_row();
}

CsvWriter& CsvWriter::operator<<(double x) {
  sep();
  os_ << format_number(x);
  return *this;
}

CsvWriter& CsvWriter::operator<<(int x) {
  sep();
  os_ << x;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& s) {
  sep();
  os_ << csv_field(s);
  return *this;
}

void CsvWriter::end_row() {
  os_ << '\n';
  first_ = true;
}

void write_time_series(std::ostream& os, const TimeSeries& ts, const DisplayUnits& units) {
  CsvWriter w(os);
  std::vector<std::string> cols = {"t", "P_1C", "P_2M", "P_1H", "P_1D", "S_CMH", "S_D", "S_tot"};
  if (units.J_MHz) cols.emplace_back("t_us");
  w.header(cols);
  for (std::size_t k = 0; k < ts.t.size(); ++k) {
    const Populations p = populations(ts.states[k]);
    const SubsystemEntropies s = subsystem_entropies(ts.states[k]);
    w << ts.t[k] << p.cold_1 << p.qutrit_2 << p.hot_1 << p.demon_1 << s.cmh << s.demon
      << s.total;
    if (units.J_MHz) w << ts.t[k] / *units.J_MHz;
    w.end_row();
  }
}

std::vector<std::string> cycle_columns(const DisplayUnits& units) {
  std::vector<std::string> cols = {"T",          "gamma",        "X",           "J_av",
                                   "X_Cn_spread", "model",       "X_C",         "X_H",
                                   "X_repeated", "window_first", "window_last", "converged",
                                   "validated"};
  if (units.J_MHz) cols.emplace_back("J_av_MHz");
  return cols;
}

void write_cycle_row(CsvWriter& w, const CycleResult& r, const DisplayUnits& units) {
  w << r.T << r.gamma << r.x << r.j_av << r.spread << r.model << r.x_cold << r.x_hot
    << r.x_repeated << r.window.first << r.window.last << (r.converged ? 1 : 0)
    << (r.validated ? 1 : 0);
  if (units.J_MHz) w << r.j_av * *units.J_MHz;
}

void write_cycle_results(std::ostream& os, const std::vector<CycleResult>& rows,
                         const DisplayUnits& units) {
  CsvWriter w(os);
  w.header(cycle_columns(units));
  for (const auto& r : rows) {
    write_cycle_row(w, r, units);
    w.end_row();
  }
}

void write_sweep_table(std::ostream& os, const SweepSpec& spec, const SweepResult& result,
                       const DisplayUnits& units) {
  CsvWriter w(os);
  std::vector<std::string> cols;
  for (const auto& a : spec.axes) cols.push_back("axis_" + a.name);
  for (const auto& c : cycle_columns(units)) cols.push_back(c);
  cols.emplace_back("flag");
  cols.emplace_back("error");
  w.header(cols);
  for (const auto& row : result.rows) {
    for (double c : row.coords) w << c;
    write_cycle_row(w, row.result, units);
    w << (row.ok ? 0 : 1) << row.error;
    w.end_row();
  }
}

void write_fig3(std::ostream& os, const std::vector<CycleResult>& rows,
                const std::vector<bool>& flags) {
  CsvWriter w(os);
  w.header({"gamma", "T", "model", "X", "J_av", "flag"});
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    w << r.gamma << r.T << r.model << r.x << r.j_av
      << (k < flags.size() && flags[k] ? 1 : 0);
    w.end_row();
  }
}

void write_convergence(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  CsvWriter w(os);
  w.header({"gamma", "T", "n", "X_C", "X_H"});
  for (const auto& r : rows) {
    w << r.gamma << r.T << r.n << r.x_cold << r.x_hot;
    w.end_row();
  }
}

void write_s5c(std::ostream& os, const std::vector<GammaOptRow>& rows) {
  CsvWriter w(os);
  w.header({"n_C", "T_H", "tau_CZ", "gamma_opt", "product", "T_opt", "J_av_max", "boundary"});
  for (const auto& r : rows) {
    const bool boundary = r.result.at_gamma_boundary || r.result.at_T_boundary;
    w << r.n_C << r.T_H << r.tau_CZ << r.result.gamma_opt << r.result.product
      << r.result.T_opt << r.result.j_av_max << (boundary ? 1 : 0);
    w.end_row();
  }
}

// ---------------------------------------------------------------------------
// Sweep spec

namespace {

[[noreturn]] void spec_error(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, "sweep spec: " + msg);
}

double number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) spec_error(where + " must be a number");
  return j.get<double>();
}

void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) spec_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) spec_error("unknown key '" + key + "' in " + where);
  }
}

std::vector<double> range_values(const nlohmann::json& r, const std::string& where) {
  if (!r.is_array() || r.size() != 3) spec_error(where + " must be [lo, hi, step]");
  return arange(number(r[0], where), number(r[1], where), number(r[2], where));
}

}  // namespace

SweepSpec parse_sweep_spec(const nlohmann::json& j, bool* validate) {
  check_keys(j, {"name", "model", "figure", "fixed", "axes", "validate"}, "spec");
  SweepSpec spec;
  if (j.contains("name")) spec.name = j.at("name").get<std::string>();
  if (j.contains("model")) spec.model = parse_model_selector(j.at("model").get<std::string>());
  if (j.contains("figure")) spec.figure = j.at("figure").get<std::string>();
  if (validate) *validate = j.value("validate", true);
  if (j.contains("fixed")) {
    if (!j.at("fixed").is_object()) spec_error("fixed must be an object");
    for (const auto& [key, value] : j.at("fixed").items()) {
      if (!is_param_name(key)) spec_error("unknown parameter '" + key + "' in fixed");
      spec.fixed.emplace_back(key, number(value, "fixed." + key));
    }
  }
  if (!j.contains("axes") || !j.at("axes").is_array()) spec_error("'axes' array missing");
  for (const auto& a : j.at("axes")) {
    check_keys(a, {"name", "values", "range", "ranges"}, "axis");
    SweepAxis axis;
    if (!a.contains("name")) spec_error("axis without name");
    axis.name = a.at("name").get<std::string>();
    const int kinds = static_cast<int>(a.contains("values")) +
                      static_cast<int>(a.contains("range")) +
                      static_cast<int>(a.contains("ranges"));
    if (kinds != 1) spec_error("axis '" + axis.name + "' needs exactly one of values/range/ranges");
    if (a.contains("values")) {
      if (!a.at("values").is_array()) spec_error("axis '" + axis.name + "' values must be a list");
      for (const auto& v : a.at("values")) axis.values.push_back(number(v, axis.name));
    } else if (a.contains("range")) {
      axis.values = range_values(a.at("range"), axis.name);
    } else {
      for (const auto& r : a.at("ranges")) {
        for (double v : range_values(r, axis.name)) axis.values.push_back(v);
      }
    }
    spec.axes.push_back(std::move(axis));
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path, bool* validate) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open spec file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    spec_error(path.string() + ": " + e.what());
  }
  try {
    return parse_sweep_spec(j, validate);
  } catch (const nlohmann::json::exception& e) {
    spec_error(e.what());
  }
}

nlohmann::json params_json(const SystemParams& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& name : param_names()) j[name] = get_param(p, name);
  const DerivedParams d = derive_params(p);
  j["derived"] = {{"n_C", d.n_C}, {"n_H", d.n_H}, {"lambda_C", d.lambda_C}, {"lambda_H", d.lambda_H}};
  return j;
}

nlohmann::json policy_json(const NumericalPolicy& pol) {
  return {{"trace_tol", pol.trace_tol},
          {"hermitian_tol", pol.hermitian_tol},
          {"positivity_tol", pol.positivity_tol},
          {"choi_tol", pol.choi_tol},
          {"nullspace_tol", pol.nullspace_tol},
          {"degenerate_rcond", pol.degenerate_rcond},
          {"convergence_tol", pol.convergence_tol}};
}

std::string version_string() {
  return std::string(DEMONLAB_VERSION) + "+" + DEMONLAB_GIT_REVISION;
}

}  // namespace demonlab::cli
