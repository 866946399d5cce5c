#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclaw/errors.hpp"
#include "fraclaw/grid.hpp"
#include "generators.hpp"

using namespace fraclaw;

TEST_CASE("grid rejects sizes that are not powers of two") {
  CHECK_THROWS_AS(Grid(100, 10.0), InvalidParameter);
  CHECK_THROWS_AS(Grid(2, 10.0), InvalidParameter);
  CHECK_THROWS_AS(Grid(64, 0.0), InvalidParameter);
  CHECK_NOTHROW(Grid(64, 10.0));
}

TEST_CASE("points and signed modes") {
  const Grid g(8, 4.0);
  CHECK(g.dx() == doctest::Approx(1.0));
  CHECK(g.x(0) == -4.0);
  CHECK(g.x(7) == 3.0);
  CHECK(g.mode(3) == 3);
  // the Nyquist mode counts as negative
  CHECK(g.mode(4) == -4);
  CHECK(g.mode(7) == -1);
  CHECK(g.wavenumber(1) == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(g.nearest_index(0.4) == 4);
  CHECK(g.nearest_index(4.1) == 0);  // wraps to -3.9
}

TEST_CASE("quadratures on closed forms") {
  const Grid g(1024, 20.0);
  const Field gauss = Field::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(integrate(gauss) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(lp_norm(gauss, 2.0) ==
        doctest::Approx(std::pow(std::numbers::pi / 2.0, 0.25)).epsilon(1e-14));
  CHECK(linf_norm(gauss) == doctest::Approx(1.0));

  const Field constant = Field::sample(g, [](double) { return 0.5; });
  CHECK(lp_norm(constant, 1.0) == doctest::Approx(20.0));
  CHECK(lp_norm(constant, 3.0) == doctest::Approx(std::cbrt(0.125 * 40.0)));
  CHECK(lp_norm(constant, std::numeric_limits<double>::infinity()) == 0.5);
}

TEST_CASE("spectral derivative of a Gaussian") {
  const Grid g(512, 16.0);
  const Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
  const Field d = derivative(f);
  double err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    err = std::max(err, std::abs(d[j] + 2.0 * g.x(j) * std::exp(-g.x(j) * g.x(j))));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("property: transforms round-trip and satisfy Parseval") {
  testing::Generator gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = std::size_t{1} << gen.integer(3, 11);
    const Grid g(n, gen.uniform(5.0, 50.0));
    Field f(g);
    for (double& v : f.values) v = gen.uniform(-1.0, 1.0);

    double residue = 1.0;
    const Field back = to_physical(to_spectral(f), &residue);
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(back[j] - f[j]));
    CHECK(err < 1e-13);
    CHECK(residue < 1e-13);

    const auto c = fft::forward(f.values);
    double energy = 0.0, spectral = 0.0;
    for (std::size_t j = 0; j < n; ++j) energy += f[j] * f[j];
    for (const auto& z : c) spectral += std::norm(z);
    CHECK(spectral / static_cast<double>(n) == doctest::Approx(energy).epsilon(1e-12));

    // the half-spectrum transform agrees with the complex one
    fft::RealTransform rt(n);
    std::vector<Complex> half(rt.half_size());
    rt.forward(f.values.data(), half.data());
    for (std::size_t k = 0; k < half.size(); ++k) CHECK(std::abs(half[k] - c[k]) < 1e-11);
    std::vector<double> out(n);
    rt.inverse(half.data(), out.data());
    for (std::size_t j = 0; j < n; ++j) CHECK(out[j] == doctest::Approx(f[j]).epsilon(1e-12));
  }
}

TEST_CASE("grid mismatch is reported") {
  const Field a(Grid(16, 1.0));
  const Field b(Grid(32, 1.0));
  CHECK_THROWS_AS(inner(a, b), GridMismatch);
}
