#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclaw/errors.hpp"
#include "fraclaw/fractional_ops.hpp"
#include "generators.hpp"

using namespace fraclaw;
using S = FractionalOperatorSpec;

namespace {

double rel_linf_gap(const Field& a, const Field& b) {
  double num = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) num = std::max(num, std::abs(a[j] - b[j]));
  return num / linf_norm(b);
}

}  // namespace

TEST_CASE("parameter ranges") {
  CHECK_THROWS_AS(S::weyl_marchaud(1.0), InvalidParameter);
  CHECK_THROWS_AS(S::dx_weyl_marchaud(0.0), InvalidParameter);
  CHECK_THROWS_AS(S::riesz_feller(2.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(S::fractional_laplacian(2.0), InvalidParameter);
  // |gamma| <= min(beta, 2 - beta)
  CHECK_THROWS_AS(S::riesz_feller(1.5, 0.8), InvalidParameter);
  CHECK_NOTHROW(S::riesz_feller(1.5, 0.5));
  CHECK_NOTHROW(S::riesz_feller(1.5, -0.5));
  CHECK_FALSE(S::weyl_marchaud(0.5).is_generator());
  CHECK(S::dx_weyl_marchaud_adjoint(0.5).is_generator());
  CHECK(S::dx_weyl_marchaud_adjoint(0.5).skewness() == doctest::Approx(-0.5));
}

TEST_CASE("frozen constants") {
  // 1/Gamma(-1/2) = -1/(2 sqrt(pi))
  CHECK(one_sided_constant(0.5) == doctest::Approx(-0.28209479177387814).epsilon(1e-15));
  // 1/Gamma(-3/2) = 3/(4 sqrt(pi))
  CHECK(one_sided_constant(1.5) == doctest::Approx(0.42314218766081724).epsilon(1e-15));
  // order one: 2 Gamma(1) / (sqrt(pi) Gamma(-1/2)) = -1/pi
  CHECK(laplacian_constant(1.0) == doctest::Approx(-0.31830988618379067).epsilon(1e-15));

  const auto c = riesz_feller_coeffs(1.5, 0.5);
  CHECK(c.c1 == doctest::Approx(0.42314218766081724).epsilon(1e-15));
  CHECK(c.c2 == 0.0);  // exactly: the flagship operator is one-sided

  const auto sym = riesz_feller_coeffs(1.6, 0.0);
  CHECK(sym.c1 == doctest::Approx(sym.c2).epsilon(1e-15));
}

TEST_CASE("symbols at xi = 1") {
  const Complex z = symbol_value(S::dx_weyl_marchaud(0.5), 1.0);
  CHECK(z.real() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
  CHECK(z.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  const Complex w = symbol_value(S::weyl_marchaud(0.5), -4.0);
  // (i xi)^(1/2) at xi = -4: 2 exp(-i pi/4)
  CHECK(w.real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(w.imag() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(symbol_value(S::fractional_laplacian(1.2), -2.0).real() ==
        doctest::Approx(std::pow(2.0, 1.2)));
  CHECK(std::abs(symbol_value(S::riesz_feller(1.5, 0.3), 0.0)) == 0.0);
}

TEST_CASE("d/dx of the left derivative is the skewed stable generator") {
  const Grid g(4096, 100.0);
  for (double alpha : {0.25, 0.5, 0.75}) {
    const auto a = make_symbol(S::dx_weyl_marchaud(alpha), g);
    const auto b = make_symbol(S::riesz_feller(1.0 + alpha, 1.0 - alpha), g);
    double gap = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      gap = std::max(gap, std::abs(a.values[k] - b.values[k]) / std::max(1.0, std::abs(b.values[k])));
    }
    CHECK(gap <= 1e-14);
  }
}

TEST_CASE("property: splitting of the Riesz-Feller symbol into one-sided parts") {
  testing::Generator gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double beta = gen.uniform(1.01, 1.99);
    const double bound = std::min(beta, 2.0 - beta);
    const double gamma = gen.uniform(-bound, bound);
    const double xi = gen.uniform(-30.0, 30.0);
    const auto c = riesz_feller_coeffs(beta, gamma);
    const Complex left = symbol_value(S::riesz_feller(beta, gamma), xi);
    const Complex right = (c.c1 * std::pow(Complex(0.0, xi), beta) +
                           c.c2 * std::pow(Complex(0.0, -xi), beta)) /
                          one_sided_constant(beta);
    CHECK(std::abs(left - right) <= 1e-12 * std::max(1.0, std::abs(left)));
  }
}

TEST_CASE("property: symbols are conjugate symmetric") {
  const Grid g(256, 10.0);
  for (const auto& spec : {S::weyl_marchaud(0.3), S::weyl_marchaud_adjoint(0.7),
                           S::dx_weyl_marchaud(0.5), S::dx_weyl_marchaud_adjoint(0.5),
                           S::riesz_feller(1.7, -0.2), S::fractional_laplacian(0.6)}) {
    CHECK(make_symbol(spec, g).conjugate_symmetry_defect() <= 1e-15 * std::pow(40.0, 2.0));
  }
}

TEST_CASE("quadrature agrees with the multiplier and converges") {
  const auto gauss = [](double x) { return std::exp(-x * x); };
  for (const auto& spec : {S::dx_weyl_marchaud(0.5), S::riesz_feller(1.6, 0.2),
                           S::weyl_marchaud(0.4), S::fractional_laplacian(1.4)}) {
    double previous = 1.0;
    for (std::size_t n : {512u, 1024u, 2048u}) {
      const Grid g(n, 40.0);
      const Field f = Field::sample(g, gauss);
      const double gap = rel_linf_gap(apply_quadrature(spec, f), apply_spectral(spec, f));
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 2e-3);
  }
  const Grid g(64, 10.0);
  CHECK_THROWS_AS(apply_quadrature(S::fractional_laplacian(0.5), Field(g)), InvalidParameter);
}

TEST_CASE("property: integration by parts on random smooth pairs") {
  testing::Generator gen(5);
  const Grid g(2048, 40.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Field a = gen.smooth_field(g);
    const Field b = gen.smooth_field(g);
    const double t1 = gen.uniform(0.55, 0.95);
    const double t2 = gen.uniform(0.55, 0.95);
    const double bound = std::min(t1 + t2, 2.0 - t1 - t2);
    const double gamma = gen.uniform(-bound, bound);
    CHECK(check_integration_by_parts(a, b, t1, t2, PartsIdentity::derivative_adjoint).relative() <=
          1e-10);
    CHECK(check_integration_by_parts(a, b, t1, t2, PartsIdentity::split_order).relative() <= 1e-10);
    CHECK(check_integration_by_parts(a, b, t1, t2, PartsIdentity::riesz_feller_two_sided, gamma)
              .relative() <= 1e-10);
    // the combined form is exact when the right-sided weight vanishes
    const double one_sided = 2.0 - t1 - t2;
    CHECK(check_integration_by_parts(a, b, t1, t2, PartsIdentity::riesz_feller_combined, one_sided)
              .relative() <= 1e-10);
  }
  CHECK_THROWS_AS(check_integration_by_parts(Field(g), Field(g), 0.4, 0.8,
                                             PartsIdentity::split_order),
                  InvalidParameter);
}

TEST_CASE("combined two-sided form fails for a skewed operator on an asymmetric pair") {
  const Grid g(2048, 40.0);
  const Field a = Field::sample(g, [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); });
  const Field b = Field::sample(g, [](double x) { return x * std::exp(-x * x / 2.0); });
  const auto r = check_integration_by_parts(a, b, 0.75, 0.75, PartsIdentity::riesz_feller_combined,
                                            0.2);
  CHECK(r.relative() > 1e-3);
}

TEST_CASE("property: generators dissipate energy") {
  testing::Generator gen(9);
  const Grid g(2048, 40.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Field f = gen.smooth_field(g);
    const double alpha = gen.uniform(0.1, 0.9);
    const auto d = dissipativity(f, S::dx_weyl_marchaud(alpha));
    CHECK(d.value > 0.0);
    CHECK(d.value == doctest::Approx(d.plancherel).epsilon(1e-10));
    CHECK(d.value == doctest::Approx(std::sin(alpha * std::numbers::pi / 2.0) * d.half_order_energy)
                         .epsilon(1e-10));
    CHECK(d.value == doctest::Approx(d.split_form).epsilon(1e-10));

    const double beta = gen.uniform(1.1, 1.9);
    const double gamma = gen.uniform(-1.0, 1.0) * std::min(beta, 2.0 - beta);
    const auto e = dissipativity(f, S::riesz_feller(beta, gamma));
    CHECK(e.value >= 0.0);
    CHECK(e.value == doctest::Approx(e.plancherel).epsilon(1e-10));
  }
}

TEST_CASE("adjoint pair through the spectral path reports a real result") {
  const Grid g(512, 20.0);
  const Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
  double residue = 1.0;
  apply_spectral(make_symbol(S::dx_weyl_marchaud(0.5), g), f, residue);
  CHECK(residue < 1e-12);
}
