#include "demonlab/cli/app.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "demonlab/cli/io.hpp"

namespace demonlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Units of each physical parameter for --help.
const char* param_unit(const std::string& name) {
  if (name == "tau_Y" || name == "tau_CZ" || name == "T_cycle") return "1/J";
  return "J";
}

const char* param_help(const std::string& name) {
  if (name == "J") return "qutrit-qubit coupling (the unit)";
  if (name == "omega_C") return "cold qubit splitting";
  if (name == "omega_H") return "hot qubit splitting";
  if (name == "omega_D") return "demon splitting (drops out in the rotating frame)";
  if (name == "T_C") return "cold bath temperature";
  if (name == "T_H") return "hot bath temperature";
  if (name == "gamma") return "bath-qubit coupling rate";
  if (name == "gamma_D_on") return "memory reset rate while the dump is on";
  if (name == "tau_Y") return "single-qubit Y gate time";
  if (name == "tau_CZ") return "controlled-phase gate time";
  if (name == "T_cycle") return "demon cycle period";
  return "";
}

struct Context {
  Context(std::ostream& o, std::ostream& e)
      : out(o), err(e), overrides(param_names().size()),
        start(std::chrono::steady_clock::now()) {}

  std::ostream& out;
  std::ostream& err;
  std::vector<std::optional<double>> overrides;
  std::string out_dir = ".";
  std::optional<double> unit_J_MHz;
  int workers = 0;
  std::optional<double> convergence_tol;
  std::optional<double> nullspace_tol;
  std::optional<double> degenerate_rcond;
  std::vector<std::string> argv;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start;

  SystemParams params(double default_gamma) const {
    SystemParams p;
    p.gamma = default_gamma;
    const auto& names = param_names();
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (overrides[k]) set_param(p, names[k], *overrides[k]);
    }
    p.validate();
    return p;
  }

  DisplayUnits units() const { return {unit_J_MHz}; }

  fs::path path(const std::string& file) {
    fs::create_directories(out_dir);
    const fs::path p = fs::path(out_dir) / file;
    outputs.push_back(p.string());
    return p;
  }

  std::ofstream open(const std::string& file) {
    const fs::path p = path(file);
    std::ofstream os(p);
    if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write " + p.string());
    return os;
  }

  void manifest(const std::string& command, json body) {
    json m;
    m["program"] = "demonlab";
    m["version"] = version_string();
    m["schema_version"] = kSchemaVersion;
    m["command"] = command;
    m["argv"] = argv;
    m["policy"] = policy_json(numerical_policy());
    m["averaging_window"] =
        "last = lo + round((hi - lo) * min(1, 1/T)), [lo, hi] = [100, 200] or "
        "[200, 400] for gamma >= 30; X_C,n averaged over [last - 9, last]";
    m["workers"] = workers > 0 ? workers : default_workers();
    if (unit_J_MHz) m["unit_J_MHz"] = *unit_J_MHz;
    for (auto& [k, v] : body.items()) m[k] = v;
    m["seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const fs::path p = path(command + ".manifest.json");
    std::ofstream os(p);
    if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write " + p.string());
    m["outputs"] = outputs;
    os << std::setw(2) << m << '\n';
  }
};

void add_param_options(CLI::App* cmd, Context& ctx) {
  const auto& names = param_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    const std::string& n = names[k];
    const std::string flag = n == "T_cycle" ? "--T,--T_cycle" : "--" + n;
    cmd->add_option(flag, ctx.overrides[k],
                    std::string(param_help(n)) + " [" + param_unit(n) + "]");
  }
}

// Throws NonConvergence after the outputs are written.
void require_converged(const CycleResult& r, Context& ctx) {
  if (!r.validated) {
    ctx.err << "warning: repeated-propagation check differs by " << r.discrepancy
            << " at T=" << r.T << " gamma=" << r.gamma << " (" << r.model << ")\n";
  }
  if (!r.converged) {
    std::ostringstream os;
    os << "limit cycle not converged at T=" << r.T << " gamma=" << r.gamma << " ("
       << r.model << "): |X_C - X_H| = " << std::abs(r.x_cold - r.x_hot);
    throw Error(ErrorKind::NonConvergence, os.str());
  }
}

json cycle_json(const CycleResult& r) {
  return {{"model", r.model},         {"T", r.T},
          {"gamma", r.gamma},         {"X", r.x},
          {"J_av", r.j_av},           {"X_C", r.x_cold},
          {"X_H", r.x_hot},           {"X_repeated", r.x_repeated},
          {"X_Cn_spread", r.spread},  {"window", {r.window.first, r.window.last}},
          {"residual", r.residual},   {"converged", r.converged},
          {"validated", r.validated}};
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_steady_state(Context& ctx) {
  const SystemParams p = ctx.params(2.0);
  const DensityMatrix rho = steady_state(p);
  const Populations pop = populations(rho);
  const SubsystemEntropies s = subsystem_entropies(rho);
  const MarkovValidity mv = markov_validity(p);
  const ReducedRates rr = reduced_rates(p);
  ctx.out << std::setprecision(6) << "P_1C " << pop.cold_1 << "\nP_2M " << pop.qutrit_2
          << "\nP_1H " << pop.hot_1 << "\nP_1D " << pop.demon_1 << "\nX_ss_inst "
          << x_ss_inst(p) << "\nS_tot " << s.total << "\nmarkov " << to_string(mv.regime)
          << " (cold " << mv.cold_ratio << ", hot " << mv.hot_ratio << ")\n";
  json body;
  body["params"] = params_json(p);
  body["populations"] = {{"P_1C", pop.cold_1}, {"P_2M", pop.qutrit_2},
                         {"P_1H", pop.hot_1},  {"P_1D", pop.demon_1}};
  body["entropies"] = {{"S_CMH", s.cmh}, {"S_D", s.demon}, {"S_tot", s.total}};
  body["X_ss_inst"] = x_ss_inst(p);
  body["markov_validity"] = {{"cold_ratio", mv.cold_ratio},
                             {"hot_ratio", mv.hot_ratio},
                             {"regime", to_string(mv.regime)}};
  body["reduced_rates"] = {{"cold_down", rr.cold_down}, {"cold_up", rr.cold_up},
                           {"hot_down", rr.hot_down},   {"hot_up", rr.hot_up}};
  ctx.manifest("steady-state", body);
}

struct ShotOptions {
  double dt = 0.01;
  double t_end = 10.0;
  bool no_controls = false;
  double oscillations = 2.0;
  std::optional<double> t_second;
};

void cmd_single_shot(Context& ctx, const ShotOptions& o) {
  const SystemParams p = ctx.params(1e-3);
  const TimeSeries ts = single_shot(p, {.dt = o.dt, .t_end = o.t_end,
                                        .suppress_controls = o.no_controls});
  {
    auto os = ctx.open("fig2.csv");
    write_time_series(os, ts, ctx.units());
  }
  auto at = [&](double t) {
    for (std::size_t k = 0; k < ts.t.size(); ++k) {
      if (std::abs(ts.t[k] - t) < 1e-12) return populations(ts.states[k]);
    }
    return Populations{};
  };
  const Populations p0 = at(0.0);
  const Populations p1 = at(ts.t1);
  const Populations p2 = at(ts.t2);
  ctx.out << std::setprecision(6) << "t1 " << ts.t1 << "  t2 " << ts.t2 << "\nP_2M(0) "
          << p0.qutrit_2 << "\nP_1D(t1) " << p1.demon_1 << "\nP_2M(t2) " << p2.qutrit_2
          << "\nrows " << ts.t.size() << " -> fig2.csv\n";
  ctx.manifest("single-shot", {{"params", params_json(p)},
                               {"dt", o.dt},
                               {"t_end", o.t_end},
                               {"suppress_controls", o.no_controls},
                               {"t1", ts.t1},
                               {"t2", ts.t2}});
}

void cmd_double_shot(Context& ctx, const ShotOptions& o) {
  const SystemParams p = ctx.params(1e-3);
  const double t_second =
      o.t_second ? *o.t_second : oscillation_time(2.0 * o.oscillations, p.J);
  const DoubleShotResult r =
      double_shot(p, t_second, {.sample_dt = o.dt, .t_end = t_second + 3.0});
  {
    auto os = ctx.open("s1.csv");
    write_time_series(os, r.series, ctx.units());
  }
  ctx.out << std::setprecision(6) << "t_second " << t_second << "\nX_total "
          << r.transferred << "\nX_until_second_end " << r.transferred_until_second_end
          << "\nP_2M before first " << r.p2_first << "\nP_2M before second "
          << r.p2_second << "\n";
  ctx.manifest("double-shot", {{"params", params_json(p)},
                               {"t_second", t_second},
                               {"X_total", r.transferred},
                               {"X_until_second_end", r.transferred_until_second_end},
                               {"P_2M_first", r.p2_first},
                               {"P_2M_second", r.p2_second}});
}

void cmd_cycles(Context& ctx, const std::string& model) {
  const SystemParams p = ctx.params(2.0);
  const ModelSelector sel = parse_model_selector(model);
  std::vector<CycleResult> rows;
  if (sel != ModelSelector::Reduced) rows.push_back(converged_transfer(p));
  if (sel != ModelSelector::Full) rows.push_back(build_reduced_cycle(p));
  {
    auto os = ctx.open("cycles.csv");
    write_cycle_results(os, rows, ctx.units());
  }
  CsvWriter w(ctx.out);
  w.header(cycle_columns(ctx.units()));
  for (const auto& r : rows) {
    write_cycle_row(w, r, ctx.units());
    w.end_row();
  }
  json results = json::array();
  for (const auto& r : rows) results.push_back(cycle_json(r));
  ctx.manifest("cycles", {{"params", params_json(p)}, {"results", results}});
  for (const auto& r : rows) require_converged(r, ctx);
}

void cmd_rectification(Context& ctx) {
  const SystemParams p = ctx.params(2.0);
  const Rectification r = rectification(p);
  ctx.out << std::setprecision(6) << "J_av_forward " << r.j_forward << "\nJ_av_reverse "
          << r.j_reverse << "\nR " << r.ratio << "\n";
  ctx.manifest("rectification", {{"params", params_json(p)},
                                 {"J_av_forward", r.j_forward},
                                 {"J_av_reverse", r.j_reverse},
                                 {"R", r.ratio}});
}

void write_fig3_files(Context& ctx, const SweepResult& res) {
  std::vector<CycleResult> rows;
  std::vector<bool> flags;
  for (const auto& r : res.rows) {
    rows.push_back(r.result);
    flags.push_back(!r.ok);
  }
  for (const char* f : {"fig3b.csv", "fig3c.csv"}) {
    auto os = ctx.open(f);
    write_fig3(os, rows, flags);
  }
}

int count_flagged(const SweepResult& res, Context& ctx) {
  int flagged = 0;
  for (const auto& r : res.rows) {
    if (!r.ok) {
      ++flagged;
      ctx.err << "warning: flagged point T=" << r.result.T << " gamma=" << r.result.gamma
              << " (" << r.result.model << "): " << r.error << "\n";
    }
  }
  return flagged;
}

void run_and_emit(Context& ctx, const SweepSpec& spec, bool validate, const std::string& command) {
  SweepOptions opts;
  opts.workers = ctx.workers;
  opts.validate = validate;
  const SweepResult res = run_sweep(spec, opts);
  {
    auto os = ctx.open(spec.name + ".csv");
    write_sweep_table(os, spec, res, ctx.units());
  }
  if (spec.figure == "fig3") write_fig3_files(ctx, res);
  const int flagged = count_flagged(res, ctx);
  SystemParams base;
  for (const auto& [k, v] : spec.fixed) set_param(base, k, v);
  json axes = json::array();
  for (const auto& a : spec.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  ctx.out << spec.name << ": " << res.rows.size() << " rows, " << flagged << " flagged, "
          << std::setprecision(3) << res.seconds << " s\n";
  ctx.manifest(command, {{"spec",
                          {{"name", spec.name},
                           {"model", to_string(spec.model)},
                           {"figure", spec.figure},
                           {"axes", axes},
                           {"validate", validate}}},
                         {"params", params_json(base)},
                         {"rows", res.rows.size()},
                         {"flagged", flagged}});
}

void cmd_sweep(Context& ctx, const std::string& spec_path) {
  bool validate = true;
  SweepSpec spec = load_sweep_spec(spec_path, &validate);
  // Command-line parameter flags override the spec's fixed values.
  const auto& names = param_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (ctx.overrides[k]) spec.fixed.emplace_back(names[k], *ctx.overrides[k]);
  }
  run_and_emit(ctx, spec, validate, "sweep");
}

void cmd_reduced_compare(Context& ctx, const std::vector<double>& gammas,
                         const std::vector<double>& Ts) {
  SweepSpec spec;
  spec.name = "reduced_compare";
  spec.model = ModelSelector::Both;
  spec.figure = "fig3";
  const auto& names = param_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (ctx.overrides[k] && names[k] != "gamma" && names[k] != "T_cycle") {
      spec.fixed.emplace_back(names[k], *ctx.overrides[k]);
    }
  }
  spec.axes = {{"gamma", gammas}, {"T_cycle", Ts.empty() ? default_T_grid() : Ts}};
  for (double g : gammas) {
    SystemParams q = ctx.params(g);
    q.gamma = g;
    const MarkovValidity mv = markov_validity(q);
    ctx.out << "gamma " << g << ": " << to_string(mv.regime) << " (cold ratio "
            << mv.cold_ratio << ", hot ratio " << mv.hot_ratio << ")\n";
  }
  run_and_emit(ctx, spec, false, "reduced-compare");
}

struct GammaOptCli {
  GammaOptOptions search;
  std::vector<double> T_C_list;
  std::vector<double> T_H_list;
  std::vector<double> tau_CZ_list;
};

void cmd_gamma_opt(Context& ctx, GammaOptCli o) {
  const SystemParams base = ctx.params(2.0);
  o.search.workers = ctx.workers;
  if (o.T_C_list.empty()) o.T_C_list = {base.T_C};
  if (o.T_H_list.empty()) o.T_H_list = {base.T_H};
  if (o.tau_CZ_list.empty()) o.tau_CZ_list = {base.tau_CZ};
  std::vector<GammaOptRow> rows;
  std::ofstream trace = ctx.open("gamma_opt_trace.csv");
  CsvWriter tw(trace);
  tw.header({"T_C", "T_H", "tau_CZ", "gamma", "T_opt", "J_av"});
  for (double tc : o.T_C_list) {
    for (double th : o.T_H_list) {
      for (double tcz : o.tau_CZ_list) {
        SystemParams p = base;
        p.T_C = tc;
        p.T_H = th;
        p.tau_CZ = tcz;
        p.T_cycle = std::max(p.T_cycle, p.gate_sequence_duration());
        p.validate();
        const GammaOptResult r = gamma_opt(p, o.search);
        rows.push_back({derive_params(p).n_C, th, tcz, r});
        for (const auto& t : r.trace) {
          tw << tc << th << tcz << t.gamma << t.T_opt << t.j_av;
          tw.end_row();
        }
        ctx.out << std::setprecision(6) << "T_C " << tc << " T_H " << th << " tau_CZ "
                << tcz << ": gamma_opt " << r.gamma_opt << " product " << r.product
                << " T_opt " << r.T_opt << " J_av " << r.j_av_max
                << (r.at_gamma_boundary ? " [gamma at boundary]" : "")
                << (r.at_T_boundary ? " [T at boundary]" : "") << "\n";
        if (r.at_gamma_boundary || r.at_T_boundary) {
          ctx.err << "warning: gamma_opt maximum on a search boundary (T_C " << tc
                  << ", T_H " << th << ", tau_CZ " << tcz << ")\n";
        }
      }
    }
  }
  {
    auto os = ctx.open("s5c.csv");
    write_s5c(os, rows);
  }
  ctx.manifest("gamma-opt", {{"params", params_json(base)},
                             {"search",
                              {{"gamma_lo", o.search.gamma_lo},
                               {"gamma_hi", o.search.gamma_hi},
                               {"scan_points", o.search.scan_points},
                               {"T_hi", o.search.T_hi},
                               {"T_step", o.search.T_step},
                               {"log_tol", o.search.log_tol}}}});
}

void cmd_convergence(Context& ctx, const std::vector<double>& gammas,
                     const std::vector<double>& Ts) {
  const SystemParams p = ctx.params(2.0);
  const auto rows = convergence_study(p, gammas, Ts);
  {
    auto os = ctx.open("s2.csv");
    write_convergence(os, rows);
  }
  ctx.out << "rows " << rows.size() << " -> s2.csv\n";
  ctx.manifest("convergence", {{"params", params_json(p)}, {"gammas", gammas}, {"T", Ts}});
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
    if (c == '"') c = '\'';
  }
  return s;
}

int report(std::ostream& err, int code, const std::string& kind, const std::string& msg) {
  err << "demonlab: error kind=" << kind << " code=" << code << " message=\""
      << one_line(msg) << "\"\n";
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx(out, err);
  for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

  CLI::App app{"Non-Markovian quantum Maxwell demon simulator. All quantities in units "
               "of J (rates, energies, temperatures) or 1/J (times)."};
  app.name("demonlab");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out,-o", ctx.out_dir, "output directory")->capture_default_str();
  app.add_option("--unit-J-MHz", ctx.unit_J_MHz,
                 "J in MHz; adds t_us and J_av_MHz display columns only");
  app.add_option("--workers", ctx.workers,
                 "parallel workers for sweeps (default: DEMONLAB_WORKERS or all cores)");
  app.add_option("--convergence-tol", ctx.convergence_tol,
                 "limit-cycle and validation tolerance in excitations (default 1e-4)");
  app.add_option("--nullspace-tol", ctx.nullspace_tol,
                 "relative singular-value cut for steady states (default 1e-10)");
  app.add_option("--degenerate-rcond", ctx.degenerate_rcond,
                 "cycle-map rcond below which the fixed point is degenerate (default 1e-13)");

  ShotOptions shot;
  auto* ss = app.add_subcommand("steady-state", "steady state, populations and Markov diagnostics");
  auto* single = app.add_subcommand("single-shot", "one demon operation from the steady state (fig2.csv); default gamma 1e-3");
  single->add_option("--dt", shot.dt, "sample spacing [1/J]")->capture_default_str();
  single->add_option("--t-end", shot.t_end, "last sample [1/J]")->capture_default_str();
  single->add_flag("--no-controls", shot.no_controls, "suppress all gate amplitudes");
  auto* dbl = app.add_subcommand("double-shot", "two demon operations (s1.csv); default gamma 1e-3");
  dbl->add_option("--oscillations", shot.oscillations,
                  "second operation after this many cold-side oscillations, t = 2k pi/(2 sqrt2 J)")
      ->capture_default_str();
  dbl->add_option("--t-second", shot.t_second, "explicit second-operation time [1/J]");
  dbl->add_option("--dt", shot.dt, "sample spacing [1/J]")->capture_default_str();

  std::string model = "full";
  auto* cycles = app.add_subcommand("cycles", "converged transfer X and J_av for one period (cycles.csv)");
  cycles->add_option("--model", model, "full, reduced or both")->capture_default_str();
  auto* rect = app.add_subcommand("rectification", "R = -J_av,f / J_av,r with T_C and T_H swapped for forward bias");

  std::string spec_path;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep from a JSON spec file");
  sweep->add_option("--spec", spec_path, "sweep spec (JSON)")->required();

  std::vector<double> gammas = {0.5, 2.0, 10.0, 30.0};
  std::vector<double> Ts;
  auto* cmp = app.add_subcommand("reduced-compare", "full vs reduced model X(T) per gamma (fig3b.csv, fig3c.csv)");
  cmp->add_option("--gammas", gammas, "bath rates [J]")->capture_default_str();
  cmp->add_option("--T-values", Ts, "cycle periods [1/J] (default: 0.3..6 step 0.05, 6.5..20 step 0.5)");

  GammaOptCli gopt;
  auto* go = app.add_subcommand("gamma-opt", "optimal gamma maximizing max_T J_av (s5c.csv)");
  go->add_option("--gamma-lo", gopt.search.gamma_lo, "outer search lower bound [J]")->capture_default_str();
  go->add_option("--gamma-hi", gopt.search.gamma_hi, "outer search upper bound [J]")->capture_default_str();
  go->add_option("--scan-points", gopt.search.scan_points, "log-spaced outer scan points")->capture_default_str();
  go->add_option("--T-max", gopt.search.T_hi, "inner search upper bound [1/J]")->capture_default_str();
  go->add_option("--T-step", gopt.search.T_step, "inner grid spacing [1/J]")->capture_default_str();
  go->add_option("--T-C-list", gopt.T_C_list, "cold temperatures to scan [J]");
  go->add_option("--T-H-list", gopt.T_H_list, "hot temperatures to scan [J]");
  go->add_option("--tau-CZ-list", gopt.tau_CZ_list, "CZ gate times to scan [1/J]");

  std::vector<double> conv_gammas = {0.5, 2.0, 10.0, 30.0};
  std::vector<double> conv_Ts = {0.5, 1.0, 2.0};
  auto* conv = app.add_subcommand("convergence", "per-cycle X_C,n and X_H,n from the steady state (s2.csv)");
  conv->add_option("--gammas", conv_gammas, "bath rates [J]")->capture_default_str();
  conv->add_option("--T-values", conv_Ts, "cycle periods [1/J]")->capture_default_str();

  for (auto* cmd : {ss, single, dbl, cycles, rect, sweep, cmp, go, conv}) {
    add_param_options(cmd, ctx);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report(err, kExitConfig, "config", e.what());
  }

  try {
    NumericalPolicy pol = numerical_policy();
    if (ctx.convergence_tol) pol.convergence_tol = *ctx.convergence_tol;
    if (ctx.nullspace_tol) pol.nullspace_tol = *ctx.nullspace_tol;
    if (ctx.degenerate_rcond) pol.degenerate_rcond = *ctx.degenerate_rcond;
    set_numerical_policy(pol);
    if (ctx.unit_J_MHz && !(*ctx.unit_J_MHz > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "--unit-J-MHz must be > 0");
    }

    if (*ss) cmd_steady_state(ctx);
    else if (*single) cmd_single_shot(ctx, shot);
    else if (*dbl) cmd_double_shot(ctx, shot);
    else if (*cycles) cmd_cycles(ctx, model);
    else if (*rect) cmd_rectification(ctx);
    else if (*sweep) cmd_sweep(ctx, spec_path);
    else if (*cmp) cmd_reduced_compare(ctx, gammas, Ts);
    else if (*go) cmd_gamma_opt(ctx, gopt);
    else if (*conv) cmd_convergence(ctx, conv_gammas, conv_Ts);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::DimensionMismatch:
        return report(err, kExitConfig, "config", e.what());
      case ErrorKind::Degenerate:
      case ErrorKind::NonConvergence:
        return report(err, kExitConvergence, "convergence", e.what());
    }
  } catch (const fs::filesystem_error& e) {
    return report(err, kExitConfig, "config", e.what());
  }
  return kExitOk;
}

}  // namespace demonlab::cli
