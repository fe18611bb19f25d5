#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "demonlab/observables.hpp"
#include "oracle.hpp"

using namespace demonlab;

TEST_CASE("entropy") {
  const SubsystemLayout L = SubsystemLayout::full();
  CHECK(entropy(DensityMatrix::maximally_mixed(L)) == doctest::Approx(std::log(24.0)));
  const std::array<int, 4> lab = {1, 2, 0, 1};
  CHECK(entropy(DensityMatrix::basis_state(L, lab)) == doctest::Approx(0.0));
  std::mt19937_64 rng(5);
  const oracle::Mat r = oracle::random_density(24, rng);
  CHECK(entropy(DensityMatrix(L, r)) == doctest::Approx(oracle::entropy(r)).epsilon(1e-12));
}

TEST_CASE("subsystem entropies of a product state add") {
  std::mt19937_64 rng(9);
  const DensityMatrix a(SubsystemLayout::cold_qutrit_hot(), oracle::random_density(12, rng));
  const DensityMatrix b(SubsystemLayout({{Subsystem::D, 2}}), oracle::random_density(2, rng));
  const SubsystemEntropies s = subsystem_entropies(tensor_product(a, b));
  CHECK(s.cmh + s.demon == doctest::Approx(s.total).epsilon(1e-12));
  CHECK(s.cmh == doctest::Approx(oracle::entropy(a.matrix())).epsilon(1e-12));
}

TEST_CASE("closed-form instantaneous bound") {
  SystemParams p;
  const double z = 1.0 + std::exp(-2.0 / 3.0) + std::exp(-7.0 / 4.0);
  CHECK(x_ss_inst(p) == doctest::Approx(std::exp(-1.75) / z).epsilon(1e-14));
  CHECK(x_ss_inst(p) == doctest::Approx(0.1030).epsilon(1e-3));
  CHECK(populations(steady_state(p)).qutrit_2 == doctest::Approx(x_ss_inst(p)).epsilon(1e-10));
}

TEST_CASE("averaging window") {
  CHECK(averaging_window(2.0, 1.0).last == 200);
  CHECK(averaging_window(2.0, 1.0).first == 191);
  CHECK(averaging_window(2.0, 0.3).last == 200);
  CHECK(averaging_window(2.0, 2.0).last == 150);
  CHECK(averaging_window(2.0, 20.0).last == 105);
  CHECK(averaging_window(30.0, 1.0).last == 400);
  CHECK(averaging_window(30.0, 4.0).last == 250);
}

TEST_CASE("converged transfer: limit cycle, balance and repeated propagation agree") {
  SystemParams p;
  p.gamma = 2.0;
  p.T_cycle = 1.2;
  const CycleResult r = converged_transfer(p);
  CHECK(r.converged);
  CHECK(r.validated);
  CHECK(std::abs(r.x_cold - r.x_hot) < 1e-8);
  CHECK(r.discrepancy < 1e-6);
  CHECK(r.j_av == doctest::Approx(r.x / 1.2));
  CHECK(r.x > 0.0);
  CHECK(r.x < x_ss_inst(p));
  const auto per = per_cycle_transfer(FullModel(p), 200, &default_cache());
  CHECK(per.back()[0] == doctest::Approx(r.x).epsilon(1e-6));
}

TEST_CASE("transfer over one cycle against RK4 and Simpson") {
  SystemParams p;
  p.gamma = 2.0;
  p.T_cycle = 0.6;
  const FullModel model(p);
  const DensityMatrix start = steady_state(model);
  const double got = integrate_transfer(model, build_cycle(p), start, Side::Cold);

  const double a_y = (kPi / 2) / (2.0 * p.tau_Y);
  const double a_cz = kPi / p.tau_CZ;
  struct Seg { oracle::Drive d; double tau; bool dump; };
  const std::vector<Seg> seq = {
      {{0, -a_y, 0}, p.tau_Y, false}, {{0, 0, a_cz}, p.tau_CZ, false}, {{0, a_y, 0}, p.tau_Y, false},
      {{-a_y, 0, 0}, p.tau_Y, false}, {{0, 0, a_cz}, p.tau_CZ, false}, {{a_y, 0, 0}, p.tau_Y, false},
      {{}, 0.6 - 0.28, true}};
  const oracle::Mat jc = oracle::cold_current(p);
  oracle::Mat rho = start.matrix();
  double total = 0.0;
  for (const auto& s : seq) {
    const auto H = oracle::hamiltonian(p, s.d);
    const auto js = oracle::jumps(p, s.dump);
    const int n = static_cast<int>(std::lround(s.tau / 1e-3 / 2)) * 2;
    const double h = s.tau / n;
    std::vector<double> f(n + 1);
    for (int k = 0; k <= n; ++k) {
      f[k] = (jc * rho).trace().real();
      if (k < n) rho = oracle::rk4(H, js, rho, h, 1e-4);
    }
    total += oracle::simpson([&](double t) { return f[static_cast<int>(std::lround(t / h))]; }, 0.0, s.tau, h);
  }
  CHECK(std::abs(got - total) < 1e-6);
}

TEST_CASE("rectification") {
  SystemParams p;
  p.J = 0.0;
  CHECK_THROWS_AS(rectification(p), Error);
  SystemParams q;
  q.T_cycle = 1.0;
  const Rectification r = rectification(q);
  CHECK(r.j_reverse > 0.0);
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio == doctest::Approx(-r.j_forward / r.j_reverse));
}
