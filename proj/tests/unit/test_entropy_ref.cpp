#include <cmath>

#include "doctest.h"
#include "fraclaw/entropy_ref.hpp"
#include "fraclaw/errors.hpp"
#include "generators.hpp"

using namespace fraclaw;

TEST_CASE("N-wave closed forms") {
  const NWaveParams p{1.0, 1.3};
  // r(1) = (q M/(q-1))^((q-1)/q) with q = 1.3
  CHECK(nwave_front(1.0, p) == doctest::Approx(std::pow(1.3 / 0.3, 0.3 / 1.3)).epsilon(1e-15));
  CHECK(nwave_max(1.0, p) == doctest::Approx(std::pow(1.3 / 0.3, 1.0 / 1.3)).epsilon(1e-15));
  // the fan reaches the maximum at the front
  const double r = nwave_front(2.0, p);
  CHECK(nwave_value(2.0, r * (1.0 - 1e-12), p) == doctest::Approx(nwave_max(2.0, p)));
  CHECK(nwave_value(2.0, -0.1, p) == 0.0);
  CHECK(nwave_value(2.0, r * 1.01, p) == 0.0);
  CHECK_THROWS_AS(nwave_front(0.0, p), InvalidParameter);
  CHECK_THROWS_AS(nwave_front(1.0, {1.0, 1.0}), InvalidParameter);
}

TEST_CASE("property: N-wave norms") {
  testing::Generator gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const NWaveParams p{gen.uniform(0.5, 2.0), gen.uniform(1.1, 1.9)};
    const double t = gen.uniform(0.5, 16.0);
    CHECK(nwave_lp_norm(t, 1.0, p) == doctest::Approx(p.mass).epsilon(1e-13));
    const Grid g(16384, 40.0);
    const Field cells = nwave_cell_averages(t, g, p);
    CHECK(integrate(cells) == doctest::Approx(p.mass).epsilon(1e-13));
    // L^p norms scale as t^(-(1/q)(1-1/p)) at fixed mass
    for (double q_norm : {2.0, 3.0, std::numeric_limits<double>::infinity()}) {
      const double ratio = nwave_lp_norm(2.0 * t, q_norm, p) / nwave_lp_norm(t, q_norm, p);
      const double inv = std::isinf(q_norm) ? 0.0 : 1.0 / q_norm;
      CHECK(std::log2(ratio) == doctest::Approx(-(1.0 - inv) / p.q).epsilon(1e-12));
    }
    // averaging over the shock cell lowers the discrete norm slightly
    CHECK(lp_norm(cells, 2.0) == doctest::Approx(nwave_lp_norm(t, 2.0, p)).epsilon(1e-2));
  }
}

TEST_CASE("bump function") {
  const Bump b{1.0, 2.0};
  CHECK(b.value(1.0) == 1.0);
  CHECK(b.value(3.0) == 0.0);
  CHECK(b.derivative(1.0) == 0.0);
  const double h = 1e-6;
  CHECK(b.derivative(1.7) == doctest::Approx((b.value(1.7 + h) - b.value(1.7 - h)) / (2 * h)));
}

TEST_CASE("property: the N-wave is an entropy solution") {
  const NWaveParams p{1.0, 1.3};
  const auto u = nwave_solution(p);
  testing::Generator gen(7);
  for (double k : {0.0, 0.25, 0.5, 1.0}) {
    for (int b = 0; b < 5; ++b) {
      const double tc = gen.uniform(1.0, 3.0);
      const TestFunction phi{{tc, gen.uniform(0.2, tc - 0.1)},
                             {gen.uniform(0.0, 2.0), gen.uniform(0.5, 2.0)}};
      const auto r = entropy_residual(u, p.q, k, phi);
      CHECK(r.admissible(1e-4));
    }
  }
  const TestFunction phi{{2.0, 1.0}, {1.0, 1.5}};
  CHECK(std::abs(weak_form_residual(u, p.q, phi)) <= 1e-9);
}

TEST_CASE("expansion shock violates the entropy condition") {
  const double q = 1.3;
  const auto bad = shock_solution(0.0, 1.0, q);
  const TestFunction phi{{1.0, 0.5}, {0.5, 1.0}};
  // weak solution, yet entropy production has the wrong sign for k between the states
  CHECK(std::abs(weak_form_residual(bad, q, phi)) <= 1e-9);
  CHECK(entropy_residual(bad, q, 0.5, phi).value < 0.0);
  // the compressive shock is admissible
  const auto good = shock_solution(1.0, 0.0, q);
  CHECK(entropy_residual(good, q, 0.5, phi).admissible());
  CHECK_THROWS_AS(shock_solution(1.0, 1.0, q), InvalidParameter);
}

TEST_CASE("test functions must stay inside the data") {
  const NWaveParams p;
  const auto u = nwave_solution(p);
  CHECK_THROWS_AS(entropy_residual(u, p.q, 0.0, {{0.5, 1.0}, {0.0, 1.0}}), SupportEscapes);

  const Grid g(256, 10.0);
  std::vector<double> times{1.0, 2.0, 3.0};
  std::vector<Field> fields(3, nwave_cell_averages(1.0, g, p));
  CHECK_THROWS_AS(entropy_residual(times, fields, p.q, 0.0, {{2.0, 0.5}, {9.5, 1.0}}),
                  SupportEscapes);
  CHECK_THROWS_AS(entropy_residual(times, fields, p.q, 0.0, {{2.5, 1.0}, {0.0, 1.0}}),
                  SupportEscapes);
  CHECK_THROWS_AS(entropy_residual(times, fields, p.q, 0.0, {{2.0, 0.5}, {0.0, 1.0}}, true),
                  InvalidParameter);
}

TEST_CASE("grid front end agrees with the exact integral") {
  const NWaveParams p;
  const Grid g(8192, 20.0);
  std::vector<double> times;
  std::vector<Field> fields;
  for (int i = 0; i <= 400; ++i) {
    times.push_back(1.0 + i * 0.005);
    fields.push_back(nwave_cell_averages(times.back(), g, p));
  }
  const TestFunction phi{{2.0, 0.9}, {1.0, 1.5}};
  for (double k : {0.0, 0.5}) {
    const auto exact = entropy_residual(nwave_solution(p), p.q, k, phi);
    const auto grid = entropy_residual(times, fields, p.q, k, phi);
    CHECK(std::abs(grid.value - exact.value) <= 1e-3 * exact.scale);
  }
}

TEST_CASE("initial trace of the N-wave is the point mass") {
  const NWaveParams p{1.5, 1.3};
  const Grid g(1 << 16, 2.0);
  std::vector<double> times;
  std::vector<Field> fields;
  for (double t : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
    times.push_back(t);
    fields.push_back(nwave_cell_averages(t, g, p));
  }
  const auto psi = [](double x) { return std::exp(-x * x) * (1.0 + 0.5 * x); };
  const auto trace = initial_trace(times, fields, psi, p.mass);
  CHECK(trace.target == doctest::Approx(1.5));
  CHECK(trace.gap() <= 1e-3);
}
