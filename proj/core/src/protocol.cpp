#include "demonlab/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace demonlab {

PulseSegment y_rotation_segment(RotationTarget target, double angle,
                                double tau_Y) {
  if (!(tau_Y > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "y rotation: tau_Y must be > 0");
  }
  PulseSegment seg;
  seg.duration = tau_Y;
  const double amplitude = angle / (2.0 * tau_Y);
  std::ostringstream label;
  switch (target) {
    case RotationTarget::QutritUpper:
      seg.controls.A_YM = amplitude;
      label << "Y_M";
      break;
    case RotationTarget::Demon:
      seg.controls.A_YD = amplitude;
      label << "Y_D";
      break;
    default:
      throw Error(ErrorKind::InvalidArgument, "y rotation: unsupported target");
  }
  label << (angle >= 0 ? "(+" : "(-") << std::abs(angle) / kPi << "pi)";
  seg.label = label.str();
  return seg;
}

PulseSegment cz_segment(double tau_CZ) {
  if (!(tau_CZ > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "cz: tau_CZ must be > 0");
  }
  PulseSegment seg;
  seg.duration = tau_CZ;
  seg.controls.A_CZ = kPi / tau_CZ;
  seg.label = "CZ";
  return seg;
}

std::vector<PulseSegment> record_step(const SystemParams& p) {
  return {y_rotation_segment(RotationTarget::Demon, -kPi / 2, p.tau_Y),
          cz_segment(p.tau_CZ),
          y_rotation_segment(RotationTarget::Demon, +kPi / 2, p.tau_Y)};
}

std::vector<PulseSegment> act_step(const SystemParams& p) {
  return {y_rotation_segment(RotationTarget::QutritUpper, -kPi / 2, p.tau_Y),
          cz_segment(p.tau_CZ),
          y_rotation_segment(RotationTarget::QutritUpper, +kPi / 2, p.tau_Y)};
}

Schedule build_cycle(const SystemParams& p) {
  p.validate();
  Schedule s;
  for (auto& seg : record_step(p)) s.segments.push_back(std::move(seg));
  for (auto& seg : act_step(p)) s.segments.push_back(std::move(seg));
  s.t1 = p.step_duration();
  s.t2 = p.gate_sequence_duration();
  const double reset = p.T_cycle - s.t2;
  if (reset > 0.0) {
    PulseSegment r;
    r.duration = reset;
    r.demon_dump = true;
    r.label = "reset";
    s.segments.push_back(std::move(r));
  }
  return s;
}

Schedule without_controls(Schedule schedule) {
  for (auto& seg : schedule.segments) seg.controls = Controls{};
  return schedule;
}

double oscillation_time(double half_periods, double J) {
  return half_periods * kPi / (2.0 * std::sqrt(2.0) * J);
}

// ---------------------------------------------------------------------------
// Trajectory sampling

namespace {

struct Piece {
  double start = 0.0;
  double end = 0.0;  // +inf for the trailing free evolution
  Generator gen;
};

std::vector<Piece> make_pieces(const Model& model,
                               const std::vector<PulseSegment>& segments,
                               const DissipatorSet& tail,
                               const GeneratorOptions& options) {
  std::vector<Piece> pieces;
  double t = 0.0;
  for (const auto& seg : segments) {
    seg.validate();
    pieces.push_back({t, t + seg.duration,
                      make_generator(model, seg.controls, seg.dissipators(), options)});
    t += seg.duration;
  }
  pieces.push_back({t, std::numeric_limits<double>::infinity(),
                    make_generator(model, Controls{}, tail, options)});
  return pieces;
}

// States at the requested (ascending) times. Step lengths within 1e-12 of
// `nominal_step` are snapped to it so the propagator cache is reused.
std::vector<Vector> sample_states(const std::vector<Piece>& pieces, Vector state,
                                  const std::vector<double>& times,
                                  double nominal_step, PropagatorCache& cache) {
  std::vector<Vector> out;
  out.reserve(times.size());
  std::size_t k = 0;
  double now = 0.0;
  auto advance = [&](const Generator& gen, double to) {
    double step = to - now;
    if (std::abs(step - nominal_step) < 1e-12) step = nominal_step;
    if (step > 0.0) state = cache.get(gen, step)->apply(state);
    now = to;
  };
  for (double s : times) {
    while (s > pieces[k].end) {
      advance(pieces[k].gen, pieces[k].end);
      ++k;
    }
    advance(pieces[k].gen, s);
    out.push_back(state);
  }
  return out;
}

std::vector<double> sample_grid(double dt, double t_end,
                                std::initializer_list<double> extra) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "sampling: need dt > 0 and t_end >= 0");
  }
  std::vector<double> t;
  const auto n = static_cast<long>(std::floor(t_end / dt + 1e-9));
  for (long k = 0; k <= n; ++k) t.push_back(static_cast<double>(k) * dt);
  for (double e : extra) {
    if (e <= t_end) t.push_back(e);
  }
  std::sort(t.begin(), t.end());
  std::vector<double> merged;
  for (double x : t) {
    if (merged.empty() || x - merged.back() > 1e-12) merged.push_back(x);
  }
  return merged;
}

}  // namespace

TimeSeries single_shot(const Model& model, const SingleShotOptions& options) {
  const SystemParams& p = model.params();
  std::vector<PulseSegment> segs = record_step(p);
  for (auto& s : act_step(p)) segs.push_back(std::move(s));
  if (options.suppress_controls) {
    for (auto& s : segs) s.controls = Controls{};
  }
  TimeSeries ts;
  ts.t1 = p.step_duration();
  ts.t2 = p.gate_sequence_duration();
  ts.t = sample_grid(options.dt, options.t_end, {ts.t1, ts.t2});

  const GeneratorOptions gopt{.sector = true, .accumulate_currents = false};
  const auto pieces = make_pieces(model, segs, {true, true, false}, gopt);
  const LiouvilleSpace& space = pieces.front().gen.space();
  const DensityMatrix rho0 = steady_state(model);
  PropagatorCache cache(std::size_t{64} << 20);
  const auto vecs = sample_states(pieces, space.vectorize(rho0), ts.t,
                                  options.dt, cache);
  ts.states.reserve(vecs.size());
  for (const auto& v : vecs) ts.states.push_back(space.to_density(v));
  return ts;
}

TimeSeries single_shot(const SystemParams& p, const SingleShotOptions& options) {
  if (!(p.gamma > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "single shot requires gamma > 0");
  }
  return single_shot(FullModel(p), options);
}

DoubleShotResult double_shot(const Model& model, double second_start,
                             const DoubleShotOptions& options) {
  const SystemParams& p = model.params();
  const double t2 = p.gate_sequence_duration();
  if (!(second_start > t2)) {
    std::ostringstream os;
    os << "double shot: second operation time " << second_start
       << " must exceed t2 = " << t2;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  std::vector<PulseSegment> segs = record_step(p);
  for (auto& s : act_step(p)) segs.push_back(std::move(s));
  PulseSegment reset;
  reset.duration = second_start - t2;
  reset.demon_dump = true;
  reset.label = "reset";
  segs.push_back(reset);
  for (auto& s : record_step(p)) segs.push_back(std::move(s));
  for (auto& s : act_step(p)) segs.push_back(std::move(s));

  const GeneratorOptions aug{.sector = true, .accumulate_currents = true};
  PropagatorCache cache(std::size_t{64} << 20);
  Schedule sched;
  sched.segments = segs;
  const auto props = segment_propagators(model, sched, aug, &cache);
  const LiouvilleSpace& space = props.front()->space();

  const DensityMatrix rho0 = steady_state(model);
  Vector v = space.vectorize(rho0);
  const RowVector p2_row = space.functional(
      embed(local::projector(3, 2), Subsystem::M, model.layout()).matrix());

  DoubleShotResult out;
  out.second_start = second_start;
  out.p2_first = (p2_row * v).real()(0);
  double integral = 0.0;
  const std::size_t second_index = 7;  // first segment of the second operation
  for (std::size_t k = 0; k < props.size(); ++k) {
    if (k == second_index) out.p2_second = (p2_row * v).real()(0);
    integral += props[k]->integrals(v)(0);
    v = props[k]->apply(v);
  }
  out.transferred_until_second_end = integral;

  // Tail to full relaxation: with the memory dump on the stationary state is
  // unique and the dump does not touch the C-M-H dynamics. For w = v - v_ss,
  // integral_0^inf f exp(L s) w ds = -f y with (L - v_ss t) y = w.
  const Generator tail_gen =
      make_generator(model, Controls{}, {true, true, true}, {.sector = true});
  const Vector v_ss = stationary_vector(tail_gen);
  const RowVector t_row = space.trace_row();
  const Matrix b = Matrix(tail_gen.liouvillian()) - v_ss * t_row;
  const Vector y = b.partialPivLu().solve(v - v_ss);
  const RowVector f_cold =
      space.functional(model.current_operator(Side::Cold).matrix());
  out.transferred = integral - (f_cold * y).real()(0);

  if (options.sample_dt > 0.0) {
    const double t_end = options.t_end > 0.0 ? options.t_end : second_start + 2.0;
    out.series.t1 = p.step_duration();
    out.series.t2 = t2;
    out.series.t = sample_grid(options.sample_dt, t_end,
                               {out.series.t1, t2, second_start,
                                second_start + t2});
    const auto pieces = make_pieces(model, segs, {true, true, false},
                                    {.sector = true});
    const auto vecs = sample_states(pieces, space.vectorize(rho0), out.series.t,
                                    options.sample_dt, cache);
    for (const auto& s : vecs) out.series.states.push_back(space.to_density(s));
  }
  return out;
}

DoubleShotResult double_shot(const SystemParams& p, double second_start,
                             const DoubleShotOptions& options) {
  if (!(p.gamma > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "double shot requires gamma > 0");
  }
  return double_shot(FullModel(p), second_start, options);
}

}  // namespace demonlab
