#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "demonlab/tensor.hpp"
#include "oracle.hpp"

using namespace demonlab;

TEST_CASE("full layout indexing") {
  const SubsystemLayout L = SubsystemLayout::full();
  CHECK(L.dim() == 24);
  for (int c = 0; c < 2; ++c)
    for (int m = 0; m < 3; ++m)
      for (int h = 0; h < 2; ++h)
        for (int d = 0; d < 2; ++d) {
          const std::array<int, 4> lab = {c, m, h, d};
          const int i = L.index(lab);
          CHECK(i == oracle::idx(c, m, h, d));
          CHECK(L.labels(i) == std::vector<int>(lab.begin(), lab.end()));
          CHECK(L.label(i, Subsystem::M) == m);
        }
  CHECK(L.position(Subsystem::H) == 2);
  CHECK_THROWS_AS(SubsystemLayout::qutrit_demon().position(Subsystem::C), Error);
}

TEST_CASE("embed matches explicit kron") {
  const SubsystemLayout L = SubsystemLayout::full();
  const Matrix a = local::transition(3, 2, 0);
  const Matrix I2 = local::identity(2);
  const Matrix ref = kron(kron(kron(I2, a), I2), I2);
  CHECK((embed(a, Subsystem::M, L).matrix() - ref).norm() == 0.0);

  const Operator p = embed_product({{Subsystem::C, local::sigma_minus()},
                                    {Subsystem::D, local::sigma_plus()}},
                                   L);
  const Matrix ref2 = kron(kron(kron(local::sigma_minus(), local::identity(3)), I2),
                           local::sigma_plus());
  CHECK((p.matrix() - ref2).norm() == 0.0);
}

TEST_CASE("partial trace inverts tensor product") {
  std::mt19937_64 rng(7);
  const SubsystemLayout cmh = SubsystemLayout::cold_qutrit_hot();
  const SubsystemLayout d = SubsystemLayout({{Subsystem::D, 2}});
  const DensityMatrix a(cmh, oracle::random_density(12, rng));
  const DensityMatrix b(d, oracle::random_density(2, rng));
  const DensityMatrix ab = tensor_product(a, b);
  CHECK(ab.layout() == SubsystemLayout::full());
  const std::array<Subsystem, 3> keep = {Subsystem::C, Subsystem::M, Subsystem::H};
  CHECK((partial_trace(ab, keep).matrix() - a.matrix()).norm() < 1e-14);
  const std::array<Subsystem, 1> keep_d = {Subsystem::D};
  CHECK((partial_trace(ab, keep_d).matrix() - b.matrix()).norm() < 1e-14);
}

TEST_CASE("partial trace against index loop") {
  std::mt19937_64 rng(11);
  const oracle::Mat rho = oracle::random_density(24, rng);
  oracle::Mat ref = oracle::Mat::Zero(3, 3);
  for (int c = 0; c < 2; ++c)
    for (int h = 0; h < 2; ++h)
      for (int d = 0; d < 2; ++d)
        for (int m = 0; m < 3; ++m)
          for (int n = 0; n < 3; ++n)
            ref(m, n) += rho(oracle::idx(c, m, h, d), oracle::idx(c, n, h, d));
  const std::array<Subsystem, 1> keep = {Subsystem::M};
  const DensityMatrix r(SubsystemLayout::full(), rho);
  CHECK((partial_trace(r, keep).matrix() - ref).norm() < 1e-14);
}

TEST_CASE("reorder round trip") {
  std::mt19937_64 rng(3);
  const SubsystemLayout L = SubsystemLayout::full();
  const SubsystemLayout R({{Subsystem::D, 2}, {Subsystem::H, 2}, {Subsystem::M, 3}, {Subsystem::C, 2}});
  const DensityMatrix rho(L, oracle::random_density(24, rng));
  const DensityMatrix back = reorder(reorder(rho, R), L);
  CHECK((back.matrix() - rho.matrix()).norm() < 1e-15);
  const Operator n = embed(local::projector(3, 2), Subsystem::M, L);
  CHECK(std::abs(expectation(reorder(n, R), reorder(rho, R)) - expectation(n, rho)) < 1e-14);
}

TEST_CASE("density matrix validation") {
  const SubsystemLayout q({{Subsystem::D, 2}});
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix(q, m), Error);
  m(0, 0) = 0.5;
  m(1, 1) = 0.4;
  CHECK_THROWS_AS(DensityMatrix(q, m), Error);
  m(1, 1) = 0.5;
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(q, m), Error);
  m(1, 0) = 0.1;
  CHECK_NOTHROW(DensityMatrix(q, m));
  CHECK_THROWS_AS(DensityMatrix(SubsystemLayout::full(), m), Error);
  CHECK(DensityMatrix::maximally_mixed(SubsystemLayout::full()).purity() ==
        doctest::Approx(1.0 / 24));
}

TEST_CASE("trace distance of orthogonal pure states is one") {
  const SubsystemLayout L = SubsystemLayout::full();
  const std::array<int, 4> a = {0, 0, 0, 0};
  const std::array<int, 4> b = {1, 2, 1, 1};
  CHECK(trace_distance(DensityMatrix::basis_state(L, a), DensityMatrix::basis_state(L, b)) ==
        doctest::Approx(1.0));
}
