#pragma once

// Time evolution under piecewise-constant Lindblad generators: exact segment
// propagation, steady states and limit cycles of the periodic protocol.

#include <memory>
#include <optional>
#include <vector>

#include "demonlab/liouville.hpp"
#include "demonlab/model.hpp"
#include "demonlab/schedule.hpp"

namespace demonlab {

// unvec(exp(gen * tau) vec(rho)). rho must lie in the generator's space.
DensityMatrix propagate_segment(const Generator& gen, double tau,
                                const DensityMatrix& rho);

// Unique stationary state of the model with controls off, memory dump off and
// the demon held in |0_D>. Solved as the null vector of the demon-free block
// (the 12-dim C x M x H generator for the full model).
DensityMatrix steady_state(const Model& model);
DensityMatrix steady_state(const SystemParams& p);

// Null vector of a Liouvillian block normalized to unit trace. Throws
// Degenerate if the null space is not one-dimensional.
Vector stationary_vector(const Generator& gen);

// Per-segment propagators of a schedule, served from `cache` when given.
std::vector<std::shared_ptr<const Propagator>> segment_propagators(
    const Model& model, const Schedule& schedule,
    const GeneratorOptions& options, PropagatorCache* cache = &default_cache());

// Ordered product of propagators (first element acts first).
Propagator compose(const std::vector<std::shared_ptr<const Propagator>>& props);

// One-period map of the schedule.
Propagator cycle_map(const Model& model, const Schedule& schedule,
                     const GeneratorOptions& options = {},
                     PropagatorCache* cache = &default_cache());

struct FixedPoint {
  Vector state;            // vec of the fixed point, unit trace
  double residual = 0.0;   // ||M x - x||_inf
  double rcond = 0.0;      // conditioning of the bordered solve
};

// Fixed point of a trace-preserving map. Throws Degenerate when eigenvalue 1
// is not simple, unless `seed` is given and is itself a fixed point, in which
// case the seed is returned.
FixedPoint limit_cycle_vector(const Propagator& map,
                              const std::optional<Vector>& seed = std::nullopt);
DensityMatrix limit_cycle_state(
    const Propagator& map,
    const std::optional<DensityMatrix>& seed = std::nullopt);

// Repeated application of the map, n times.
Vector iterate_map(const Propagator& map, Vector state, int n);

}  // namespace demonlab
