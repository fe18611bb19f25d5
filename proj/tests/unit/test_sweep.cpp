#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "demonlab/sweep.hpp"

using namespace demonlab;

TEST_CASE("arange and the default T grid") {
  const auto a = arange(0.3, 0.5, 0.05);
  REQUIRE(a.size() == 5);
  CHECK(a[1] == 0.35);
  CHECK(a.back() == 0.5);
  const auto g = default_T_grid();
  CHECK(g.size() == 115 + 28);
  CHECK(g.front() == 0.3);
  CHECK(g[114] == 6.0);
  CHECK(g[115] == 6.5);
  CHECK(g.back() == 20.0);
  CHECK_THROWS_AS(arange(1.0, 0.0, 0.1), Error);
}

TEST_CASE("local maxima after smoothing") {
  std::vector<double> y;
  for (int k = 0; k < 200; ++k) y.push_back(std::sin(0.1 * k) + 0.001 * ((k * 7919) % 3));
  const auto idx = local_maxima(y);
  // sin(0.1 k) peaks at k = 15.7, 78.5, 141.4
  REQUIRE(idx.size() == 3);
  CHECK(std::abs(static_cast<double>(idx[0]) - 15.7) <= 1.0);
  CHECK(std::abs(static_cast<double>(idx[1]) - 78.5) <= 1.0);
  CHECK(std::abs(static_cast<double>(idx[2]) - 141.4) <= 1.0);
  CHECK(local_maxima({1.0, 2.0}).empty());
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (int workers : {1, 3}) {
    std::vector<std::atomic<int>> hits(50);
    parallel_for(50, workers, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 2,
                               [](std::size_t i) {
                                 if (i == 4) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("sweep spec validation") {
  SweepSpec s;
  s.axes = {{"T_cycle", {0.5, 1.0}}};
  CHECK_NOTHROW(s.validate());
  CHECK(s.size() == 2);
  s.axes = {{"bogus", {1.0}}};
  CHECK_THROWS_AS(s.validate(), Error);
  s.axes = {{"gamma", {}}};
  CHECK_THROWS_AS(s.validate(), Error);
  s.axes = {};
  CHECK_THROWS_AS(s.validate(), Error);
  CHECK(parse_model_selector("both") == ModelSelector::Both);
  CHECK_THROWS_AS(parse_model_selector("markov"), Error);
}

TEST_CASE("sweep rows are ordered and independent of the worker count") {
  SweepSpec s;
  s.model = ModelSelector::Both;
  s.fixed = {{"gamma", 1.0}};
  s.axes = {{"tau_CZ", {0.1, 0.3}}, {"T_cycle", {0.5, 1.0}}};
  SweepOptions o;
  o.validate = false;
  o.workers = 1;
  const SweepResult one = run_sweep(s, o);
  o.workers = 3;
  const SweepResult three = run_sweep(s, o);
  REQUIRE(one.rows.size() == 8);
  REQUIRE(three.rows.size() == 8);
  // tau_CZ = 0.3 gives t2 = 0.68 > 0.5: that point is invalid and flagged.
  for (std::size_t k = 0; k < 8; ++k) {
    const auto& a = one.rows[k];
    const auto& b = three.rows[k];
    CHECK(a.coords == b.coords);
    CHECK(a.result.model == (k % 2 == 0 ? "full" : "reduced"));
    CHECK(a.ok == b.ok);
    CHECK(a.result.x == b.result.x);
  }
  CHECK(one.rows[0].coords == std::vector<double>{0.1, 0.5});
  CHECK(one.rows[2].coords == std::vector<double>{0.1, 1.0});
  CHECK_FALSE(one.rows[4].ok);
  CHECK(one.rows[4].error.find("invalid") != std::string::npos);
  CHECK(one.rows[6].ok);
}

TEST_CASE("inner maximum over T is interior for the default point") {
  SystemParams p;
  p.gamma = 2.0;
  const InnerMaximum m = max_current_over_T(p, 0.3, 3.0, 0.1, 1);
  CHECK_FALSE(m.at_boundary);
  CHECK(m.T > 0.5);
  CHECK(m.T < 2.5);
  SystemParams q = p;
  q.T_cycle = m.T;
  CHECK(converged_transfer(q, {.validate = false}).j_av == doctest::Approx(m.j_av).epsilon(1e-12));
  q.T_cycle = m.T + 0.05;
  CHECK(converged_transfer(q, {.validate = false}).j_av <= m.j_av);
}

TEST_CASE("convergence study rows") {
  SystemParams p;
  const auto rows = convergence_study(p, {2.0}, {2.0});
  REQUIRE(rows.size() == 151);
  CHECK(rows.front().n == 0);
  CHECK(rows.back().n == 150);
  CHECK(std::abs(rows.back().x_cold - rows.back().x_hot) < 1e-8);
}
