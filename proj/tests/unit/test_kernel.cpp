#include <cmath>

#include "doctest.h"
#include "fraclaw/errors.hpp"
#include "fraclaw/kernel.hpp"
#include "generators.hpp"

using namespace fraclaw;
using S = FractionalOperatorSpec;

TEST_CASE("kernel is a probability density") {
  const Grid g(4096, 100.0);
  for (const auto& spec : {S::dx_weyl_marchaud(0.5), S::riesz_feller(1.5, 0.0),
                           S::riesz_feller(1.6, 0.2)}) {
    const auto k = kernel_field(1.0, spec, g);
    CHECK(integrate(k.field) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.field.min() >= -1e-5 * k.field.max());
  }
  CHECK_THROWS_AS(kernel_field(1.0, S::weyl_marchaud(0.5), g), InvalidParameter);
  CHECK_THROWS_AS(kernel_field(0.0, S::dx_weyl_marchaud(0.5), g), InvalidParameter);
}

TEST_CASE("symmetric kernel is even, skewed kernel is not") {
  const Grid g(1024, 40.0);
  const auto even = kernel_field(1.0, S::riesz_feller(1.5, 0.0), g).field;
  const auto skew = kernel_field(1.0, S::dx_weyl_marchaud(0.5), g).field;
  double odd_even = 0.0, odd_skew = 0.0;
  for (std::size_t j = 1; j < g.size(); ++j) {
    odd_even = std::max(odd_even, std::abs(even[j] - even[g.size() - j]));
    odd_skew = std::max(odd_skew, std::abs(skew[j] - skew[g.size() - j]));
  }
  CHECK(odd_even < 1e-14);
  CHECK(odd_skew > 1e-3);
}

TEST_CASE("semigroup and linear evolution agree") {
  const Grid g(2048, 60.0);
  const auto spec = S::dx_weyl_marchaud(0.5);
  const Field a = kernel_field(0.5, spec, g).field;
  const Field b = kernel_field(1.5, spec, g).field;
  const Field ab = convolve(a, b);
  const Field c = kernel_field(2.0, spec, g).field;
  Field diff = c;
  for (std::size_t j = 0; j < g.size(); ++j) diff[j] -= ab[j];
  CHECK(lp_norm(diff, 1.0) <= 1e-6);

  testing::Generator gen(1);
  const Field f = gen.density(g);
  const Field direct = evolve_linear(f, spec, 2.0);
  const Field via = convolve(c, f);
  double gap = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) gap = std::max(gap, std::abs(direct[j] - via[j]));
  CHECK(gap <= 1e-10);
}

TEST_CASE("self-similarity") {
  // linear interpolation of K(1, .) limits the residual to O(dx^2)
  const Grid g(8192, 100.0);
  CHECK(self_similarity_residual(2.0, S::dx_weyl_marchaud(0.5), g) <= 1e-4);
  CHECK(self_similarity_residual(0.5, S::dx_weyl_marchaud(0.5), g) <= 1e-4);
  CHECK(self_similarity_residual(0.5, S::riesz_feller(1.6, 0.2), g) <= 1e-4);
}

TEST_CASE("time decay exponents") {
  const Grid g(4096, 100.0);
  const auto spec = S::riesz_feller(1.5, 0.0);
  const auto fit = time_decay_exponent(2.0, 0.5, true, spec, g);
  CHECK(fit.expected == doctest::Approx(-(0.5 + 1.5) / 1.5));
  CHECK(std::abs(fit.slope - fit.expected) <= 0.02);
  // p = 1, theta = 0, j = 0: mass is conserved
  const auto mass = time_decay_exponent(1.0, 0.0, false, spec, g);
  CHECK(std::abs(mass.slope) <= 1e-10);
}

TEST_CASE("tail fit argument checks") {
  const Grid g(1024, 40.0);
  CHECK_THROWS_AS(tail_decay_exponent(0.0, S::dx_weyl_marchaud(0.5), g, 5.0, 20.0),
                  InvalidParameter);
  CHECK_THROWS_AS(tail_decay_exponent(0.5, S::dx_weyl_marchaud(0.5), g, 5.0, 45.0), Unresolved);
}

TEST_CASE("property: loglog slope is exact on power laws") {
  testing::Generator gen(2);
  for (int trial = 0; trial < 50; ++trial) {
    const double e = gen.uniform(-3.0, 3.0);
    const double c = gen.uniform(0.1, 10.0);
    std::vector<double> x, y;
    for (int i = 0; i < gen.integer(2, 8); ++i) {
      x.push_back(std::pow(2.0, i + gen.uniform(0.0, 0.5)));
      y.push_back(c * std::pow(x.back(), e));
    }
    CHECK(loglog_slope(x, y) == doctest::Approx(e).epsilon(1e-12));
  }
}
