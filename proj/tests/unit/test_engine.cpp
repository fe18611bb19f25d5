#include <doctest.h>

#include <cmath>
#include <random>

#include "demonlab/engine.hpp"
#include "demonlab/protocol.hpp"
#include "oracle.hpp"

using namespace demonlab;

TEST_CASE("steady state equals the thermal product state") {
  SystemParams p;
  const DensityMatrix rho = steady_state(p);
  // Detailed balance: Boltzmann weights of the qutrit at the two bath
  // temperatures, e^{-w_C/T_C} for |2_M> and e^{-w_H/T_H} for |1_M>.
  const double z = 1.0 + std::exp(-2.0 / 3.0) + std::exp(-7.0 / 4.0);
  double p2 = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int h = 0; h < 2; ++h)
      for (int d = 0; d < 2; ++d) p2 += rho.matrix()(oracle::idx(c, 2, h, d), oracle::idx(c, 2, h, d)).real();
  CHECK(p2 == doctest::Approx(std::exp(-7.0 / 4.0) / z).epsilon(1e-10));
  // Stationary under the matrix-form oracle generator.
  const oracle::Mat r = oracle::lindblad_rhs(oracle::hamiltonian(p), oracle::jumps(p, false), rho.matrix());
  CHECK(r.norm() < 1e-10);
  CHECK(rho.check().valid);
}

TEST_CASE("steady state at gamma = 0 is degenerate") {
  SystemParams p;
  p.gamma = 0.0;
  CHECK_THROWS_AS(steady_state(p), Error);
}

TEST_CASE("limit cycle matches power iteration and repeated propagation") {
  SystemParams p;
  p.gamma = 2.0;
  p.T_cycle = 1.3;
  const FullModel model(p);
  const Schedule s = build_cycle(p);
  const Propagator M = cycle_map(model, s);
  const FixedPoint fp = limit_cycle_vector(M);
  CHECK(fp.residual < 1e-10);
  const Vector start = M.space().vectorize(steady_state(model));
  const Vector pw = oracle::power_iteration(M.map(), start, M.space().trace_row(), 400);
  CHECK((pw - fp.state).cwiseAbs().maxCoeff() < 1e-10);
  const Vector rep = iterate_map(M, start, 200);
  CHECK((rep - fp.state).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("cycle map has a simple eigenvalue one") {
  SystemParams p;
  p.gamma = 0.5;
  const FullModel model(p);
  const Propagator M = cycle_map(model, build_cycle(p));
  CHECK(M.state_size() == 184);
  Eigen::ComplexEigenSolver<Matrix> es(M.map(), false);
  int ones = 0;
  double spectral_gap = 0.0;
  for (const cplx& l : es.eigenvalues()) {
    CHECK(std::abs(l) < 1.0 + 1e-9);
    if (std::abs(l - 1.0) < 1e-6) ++ones;
    else spectral_gap = std::max(spectral_gap, std::abs(l));
  }
  CHECK(ones == 1);
  CHECK(spectral_gap < 1.0 - 1e-6);
}

TEST_CASE("degenerate maps") {
  SystemParams p;
  const FullModel model(p);
  const LiouvilleSpace space = model_space(model, true);
  const Propagator id = Propagator::identity(space, 0);
  CHECK_THROWS_AS(limit_cycle_vector(id), Error);
  const DensityMatrix seed = steady_state(model);
  const DensityMatrix back = limit_cycle_state(id, seed);
  CHECK((back.matrix() - seed.matrix()).norm() < 1e-14);
}

TEST_CASE("segment propagators are cached per schedule") {
  SystemParams p;
  const FullModel model(p);
  PropagatorCache cache;
  const Schedule s = build_cycle(p);
  const auto a = segment_propagators(model, s, {}, &cache);
  const auto b = segment_propagators(model, s, {}, &cache);
  CHECK(a.size() == s.segments.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].get() == b[k].get());
  // Both Y_D pulses share |A| tau but differ in sign, so they are distinct.
  CHECK(cache.size() >= 5);
  const Propagator c = compose(a);
  CHECK(c.duration() == doctest::Approx(p.T_cycle));
}
