#pragma once

// The three-step demon protocol as pulse schedules.
//
//   step 1  CNOT(M level 2 -> D)       Y_D(-pi/2), CZ, Y_D(+pi/2)
//   step 2  CNOT(D -> M levels 1<->2)  Y_M(-pi/2), CZ, Y_M(+pi/2)
//   step 3  memory reset               gamma_D on for T - t2
//
// Y(theta) is generated by A (i|up><down| - i|down><up|) for a time tau,
// which rotates by theta = 2 A tau. CZ imprints phase A_CZ * tau_CZ = pi on
// |2_M 1_D>. With these conventions Y(+pi/2) CZ Y(-pi/2) is exactly CNOT on
// the target.

#include <optional>
#include <vector>

#include "demonlab/engine.hpp"
#include "demonlab/schedule.hpp"

namespace demonlab {

enum class RotationTarget {
  QutritUpper,  // M transition |1_M> <-> |2_M>
  Demon,        // D transition |0_D> <-> |1_D>
};

PulseSegment y_rotation_segment(RotationTarget target, double angle,
                                double tau_Y);
PulseSegment cz_segment(double tau_CZ);

std::vector<PulseSegment> record_step(const SystemParams& p);  // step 1
std::vector<PulseSegment> act_step(const SystemParams& p);     // step 2

// Steps 1-3 for one period T_cycle. Throws if T_cycle < t2.
Schedule build_cycle(const SystemParams& p);

// Same schedule with every control amplitude zeroed (timing and dump kept).
Schedule without_controls(Schedule schedule);

struct TimeSeries {
  std::vector<double> t;
  std::vector<DensityMatrix> states;
  double t1 = 0.0;
  double t2 = 0.0;
};

struct SingleShotOptions {
  double dt = 0.01;       // sample spacing, 1/J
  double t_end = 10.0;    // 1/J
  bool suppress_controls = false;
};

// Starts from the steady state at t = 0, applies steps 1-2 (no reset) and
// then evolves freely. Samples on the uniform grid k*dt plus t1 and t2.
TimeSeries single_shot(const Model& model, const SingleShotOptions& options = {});
TimeSeries single_shot(const SystemParams& p, const SingleShotOptions& options = {});

// Second demon operation starts at t = k * pi / (2 sqrt(2) J).
double oscillation_time(double half_periods, double J);

struct DoubleShotOptions {
  // Optional population trace of the run (empty when sample_dt <= 0).
  double sample_dt = 0.0;
  double t_end = 0.0;
};

struct DoubleShotResult {
  double second_start = 0.0;  // t~
  // Integral of the cold-side current from t = 0 until the system has fully
  // relaxed back to the steady state.
  double transferred = 0.0;
  // Cold-side integral up to the end of the second operation.
  double transferred_until_second_end = 0.0;
  // P(|2_M>) immediately before each operation.
  double p2_first = 0.0;
  double p2_second = 0.0;
  TimeSeries series;
};

// Steps 1-2 at t = 0, memory reset until t~, steps 1-2 again at t~, free
// evolution afterwards. Throws if t~ <= t2.
DoubleShotResult double_shot(const Model& model, double second_start,
                             const DoubleShotOptions& options = {});
DoubleShotResult double_shot(const SystemParams& p, double second_start,
                             const DoubleShotOptions& options = {});

}  // namespace demonlab
