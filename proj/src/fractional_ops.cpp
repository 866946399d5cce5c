#include "fraclaw/fractional_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fraclaw/errors.hpp"

namespace fraclaw {

namespace {

constexpr double kPi = std::numbers::pi;

void require_order(double a, const char* what) {
  if (!(a > 0.0 && a < 1.0)) {
    throw InvalidParameter(std::string(what) + ": order alpha must lie in (0,1), got " +
                           std::to_string(a));
  }
}

// (i xi)^s on the principal branch; sign = -1 gives (-i xi)^s.
Complex power_of_i_xi(double xi, double s, int sign) {
  if (xi == 0.0) return {0.0, 0.0};
  const double mag = std::pow(std::abs(xi), s);
  const double phase = sign * (xi > 0 ? 1.0 : -1.0) * s * kPi / 2.0;
  return std::polar(mag, phase);
}

// sin(x pi / 2), exactly zero when x is an even integer.
double sin_half_pi(double x) {
  const double half = x / 2.0;
  if (half == std::nearbyint(half)) return 0.0;
  return std::sin(x * kPi / 2.0);
}

}  // namespace

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::weyl_marchaud: return "weyl_marchaud";
    case OperatorKind::weyl_marchaud_adjoint: return "weyl_marchaud_adjoint";
    case OperatorKind::dx_weyl_marchaud: return "dx_weyl_marchaud";
    case OperatorKind::dx_weyl_marchaud_adjoint: return "dx_weyl_marchaud_adjoint";
    case OperatorKind::riesz_feller: return "riesz_feller";
    case OperatorKind::fractional_laplacian: return "fractional_laplacian";
  }
  return "unknown";
}

FractionalOperatorSpec FractionalOperatorSpec::weyl_marchaud(double alpha) {
  FractionalOperatorSpec s{OperatorKind::weyl_marchaud, alpha, 0.0, 0.0};
  s.validate();
  return s;
}

FractionalOperatorSpec FractionalOperatorSpec::weyl_marchaud_adjoint(double alpha) {
  FractionalOperatorSpec s{OperatorKind::weyl_marchaud_adjoint, alpha, 0.0, 0.0};
  s.validate();
  return s;
}

FractionalOperatorSpec FractionalOperatorSpec::dx_weyl_marchaud(double alpha) {
  FractionalOperatorSpec s{OperatorKind::dx_weyl_marchaud, alpha, 1.0 + alpha, 1.0 - alpha};
  s.validate();
  return s;
}

FractionalOperatorSpec FractionalOperatorSpec::dx_weyl_marchaud_adjoint(double alpha) {
  FractionalOperatorSpec s{OperatorKind::dx_weyl_marchaud_adjoint, alpha, 1.0 + alpha,
                           alpha - 1.0};
  s.validate();
  return s;
}

FractionalOperatorSpec FractionalOperatorSpec::riesz_feller(double beta, double gamma) {
  FractionalOperatorSpec s{OperatorKind::riesz_feller, 0.0, beta, gamma};
  s.validate();
  return s;
}

FractionalOperatorSpec FractionalOperatorSpec::fractional_laplacian(double theta) {
  FractionalOperatorSpec s{OperatorKind::fractional_laplacian, 0.0, theta, 0.0};
  s.validate();
  return s;
}

void FractionalOperatorSpec::validate() const {
  switch (kind) {
    case OperatorKind::weyl_marchaud:
    case OperatorKind::weyl_marchaud_adjoint:
    case OperatorKind::dx_weyl_marchaud:
    case OperatorKind::dx_weyl_marchaud_adjoint:
      require_order(alpha, to_string(kind).c_str());
      return;
    case OperatorKind::riesz_feller: {
      if (!(beta > 1.0 && beta < 2.0)) {
        throw InvalidParameter("riesz_feller: 1 < beta < 2 violated, beta = " +
                               std::to_string(beta));
      }
      const double bound = std::min(beta, 2.0 - beta);
      if (!(std::abs(gamma) <= bound + 1e-15)) {
        throw InvalidParameter("riesz_feller: |gamma| <= min(beta, 2 - beta) = " +
                               std::to_string(bound) + " violated, gamma = " +
                               std::to_string(gamma));
      }
      return;
    }
    case OperatorKind::fractional_laplacian:
      if (!(beta > 0.0 && beta < 2.0)) {
        throw InvalidParameter("fractional_laplacian: order must lie in (0,2), got " +
                               std::to_string(beta));
      }
      return;
  }
}

bool FractionalOperatorSpec::is_generator() const {
  return kind == OperatorKind::dx_weyl_marchaud || kind == OperatorKind::dx_weyl_marchaud_adjoint ||
         kind == OperatorKind::riesz_feller;
}

double FractionalOperatorSpec::stability_index() const {
  if (!is_generator()) throw InvalidParameter(to_string(kind) + " is not a generator");
  return kind == OperatorKind::riesz_feller ? beta : 1.0 + alpha;
}

double FractionalOperatorSpec::skewness() const {
  switch (kind) {
    case OperatorKind::dx_weyl_marchaud: return 1.0 - alpha;
    case OperatorKind::dx_weyl_marchaud_adjoint: return alpha - 1.0;
    case OperatorKind::riesz_feller: return gamma;
    default: throw InvalidParameter(to_string(kind) + " is not a generator");
  }
}

Complex symbol_value(const FractionalOperatorSpec& spec, double xi) {
  switch (spec.kind) {
    case OperatorKind::weyl_marchaud: return power_of_i_xi(xi, spec.alpha, +1);
    case OperatorKind::weyl_marchaud_adjoint: return -power_of_i_xi(xi, spec.alpha, -1);
    case OperatorKind::dx_weyl_marchaud: return power_of_i_xi(xi, 1.0 + spec.alpha, +1);
    case OperatorKind::dx_weyl_marchaud_adjoint: return power_of_i_xi(xi, 1.0 + spec.alpha, -1);
    case OperatorKind::riesz_feller: {
      if (xi == 0.0) return {0.0, 0.0};
      const double sgn = xi > 0 ? 1.0 : -1.0;
      return -std::polar(std::pow(std::abs(xi), spec.beta), -sgn * spec.gamma * kPi / 2.0);
    }
    case OperatorKind::fractional_laplacian:
      return {xi == 0.0 ? 0.0 : std::pow(std::abs(xi), spec.beta), 0.0};
  }
  return {0.0, 0.0};
}

double SpectralMultiplier::conjugate_symmetry_defect() const {
  const std::size_t n = values.size();
  double worst = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    worst = std::max(worst, std::abs(values[n - k] - std::conj(values[k])));
  }
  worst = std::max(worst, std::abs(values[0].imag()));
  return worst;
}

SpectralMultiplier make_symbol(const FractionalOperatorSpec& spec, const Grid& grid) {
  spec.validate();
  SpectralMultiplier m{grid, Spectrum(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) m.values[k] = symbol_value(spec, grid.wavenumber(k));
  return m;
}

Field apply_spectral(const SpectralMultiplier& mult, const Field& f, double& imag_residue) {
  require_same_grid(mult.grid, f.grid, "apply_spectral");
  auto s = to_spectral(f);
  for (std::size_t k = 0; k < s.coefficients.size(); ++k) s.coefficients[k] *= mult.values[k];
  return to_physical(s, &imag_residue);
}

Field apply_spectral(const SpectralMultiplier& mult, const Field& f) {
  double residue = 0.0;
  return apply_spectral(mult, f, residue);
}

Field apply_spectral(const FractionalOperatorSpec& spec, const Field& f) {
  return apply_spectral(make_symbol(spec, f.grid), f);
}

double one_sided_constant(double s) { return 1.0 / std::tgamma(-s); }

double laplacian_constant(double theta) {
  return std::pow(2.0, theta) * std::tgamma((theta + 1.0) / 2.0) /
         (std::sqrt(kPi) * std::tgamma(-theta / 2.0));
}

RieszFellerCoefficients riesz_feller_coeffs(double beta, double gamma) {
  FractionalOperatorSpec::riesz_feller(beta, gamma);  // range check
  const double g1 = std::tgamma(1.0 + beta) / kPi;
  return {g1 * sin_half_pi(beta - gamma), g1 * sin_half_pi(beta + gamma)};
}

// ---------------------------------------------------------------------------
// Singular-integral evaluation.
//
// Every operator is a combination of one-sided integrals
//   J(sigma, s)[g](x) = int_0^inf [g(x + sigma z) - g(x) - sigma g'(x) z 1{s>1}] z^(-1-s) dz
// with sigma = +-1 and s in (0,2) \ {1}. On [0, Z] (Z = half the box) the
// integrand is summed by the trapezoid rule after removing its local Taylor
// model sigma g' z^-s 1{s<1} + g'' z^(1-s)/2, whose integrals are added back in
// closed form. Beyond Z the constant and linear parts are integrated exactly;
// the g(x + sigma z) part is summed over all periodic images with weights
// folded modulo n.
// ---------------------------------------------------------------------------
namespace {

// dx^(-s) sum_{m >= 1, m = r mod n} m^(-1-s) for r = 0..n-1.
std::vector<double> folded_weights(std::size_t n, double s, double dx) {
  constexpr int kDirectImages = 64;
  std::vector<double> w(n, 0.0);
  const double nn = static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int p = (r == 0 ? 1 : 0); p < kDirectImages; ++p) {
      acc += std::pow(static_cast<double>(r) + p * nn, -1.0 - s);
    }
    // Remaining images by the midpoint rule in p.
    acc += std::pow(static_cast<double>(r) + (kDirectImages - 0.5) * nn, -s) / (s * nn);
    w[r] = acc * std::pow(dx, -s);
  }
  return w;
}

// Fourth-order central differences on the periodic grid.
void local_derivatives(const std::vector<double>& g, double dx, std::vector<double>& d1,
                       std::vector<double>& d2) {
  const std::size_t n = g.size();
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double gm2 = g[(j + n - 2) % n];
    const double gm1 = g[(j + n - 1) % n];
    const double gp1 = g[(j + 1) % n];
    const double gp2 = g[(j + 2) % n];
    d1[j] = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * dx);
    d2[j] = (-gm2 + 16.0 * gm1 - 30.0 * g[j] + 16.0 * gp1 - gp2) / (12.0 * dx * dx);
  }
}

std::vector<double> one_sided_integral(const std::vector<double>& g, const std::vector<double>& d1,
                                       const std::vector<double>& d2, int sigma, double s,
                                       double dx) {
  const std::size_t n = g.size();
  const std::size_t half = n / 2;
  const double z_max = static_cast<double>(half) * dx;

  // Trapezoid sums S_a = dx sum_{m=1}^{half} w_m z_m^a with w_half = 1/2.
  auto trapezoid_power = [&](double a) {
    double acc = 0.0;
    for (std::size_t m = 1; m <= half; ++m) {
      const double w = (m == half) ? 0.5 : 1.0;
      acc += w * std::pow(static_cast<double>(m) * dx, a);
    }
    return acc * dx;
  };

  const double c0 = trapezoid_power(-1.0 - s) + std::pow(z_max, -s) / s;
  double c1 = trapezoid_power(-s);
  if (s > 1.0) {
    c1 += std::pow(z_max, 1.0 - s) / (s - 1.0);
  } else {
    c1 -= std::pow(z_max, 1.0 - s) / (1.0 - s);
  }
  const double c2 = 0.5 * (trapezoid_power(1.0 - s) - std::pow(z_max, 2.0 - s) / (2.0 - s));

  const auto w = folded_weights(n, s, dx);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double shifted = 0.0;
    for (std::size_t r = 1; r < n; ++r) {
      const std::size_t idx = sigma > 0 ? (j + r) % n : (j + n - r) % n;
      shifted += w[r] * g[idx];
    }
    shifted += w[0] * g[j];
    out[j] = shifted - g[j] * c0 - sigma * d1[j] * c1 - d2[j] * c2;
  }
  return out;
}

}  // namespace

Field apply_quadrature(const FractionalOperatorSpec& spec, const Field& f) {
  spec.validate();
  if (spec.kind == OperatorKind::fractional_laplacian && !(spec.beta > 1.0 && spec.beta < 2.0)) {
    throw InvalidParameter(
        "fractional_laplacian: the integral form needs order in (1,2); use apply_spectral");
  }
  const double dx = f.grid.dx();
  std::vector<double> d1, d2;
  local_derivatives(f.values, dx, d1, d2);
  auto J = [&](int sigma, double s) { return one_sided_integral(f.values, d1, d2, sigma, s, dx); };

  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  auto accumulate = [&](const std::vector<double>& part, double weight) {
    for (std::size_t j = 0; j < n; ++j) out[j] += weight * part[j];
  };

  switch (spec.kind) {
    case OperatorKind::weyl_marchaud:
      accumulate(J(-1, spec.alpha), one_sided_constant(spec.alpha));
      break;
    case OperatorKind::weyl_marchaud_adjoint:
      accumulate(J(+1, spec.alpha), -one_sided_constant(spec.alpha));
      break;
    case OperatorKind::dx_weyl_marchaud:
      accumulate(J(-1, 1.0 + spec.alpha), one_sided_constant(1.0 + spec.alpha));
      break;
    case OperatorKind::dx_weyl_marchaud_adjoint:
      accumulate(J(+1, 1.0 + spec.alpha), one_sided_constant(1.0 + spec.alpha));
      break;
    case OperatorKind::riesz_feller: {
      const auto c = riesz_feller_coeffs(spec.beta, spec.gamma);
      if (c.c1 != 0.0) accumulate(J(-1, spec.beta), c.c1);
      if (c.c2 != 0.0) accumulate(J(+1, spec.beta), c.c2);
      break;
    }
    case OperatorKind::fractional_laplacian: {
      const double c = laplacian_constant(spec.beta);
      accumulate(J(-1, spec.beta), c);
      accumulate(J(+1, spec.beta), c);
      break;
    }
  }
  return Field(f.grid, std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

// Discrete L2 pairing through Parseval: (dx/n) sum a_k conj(b_k).
Complex parseval(const Spectrum& a, const Spectrum& b, double dx) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * std::conj(b[k]);
  return acc * (dx / static_cast<double>(a.size()));
}

Field apply(const FractionalOperatorSpec& spec, const Field& f) { return apply_spectral(spec, f); }

double l2(const Field& f) { return lp_norm(f, 2.0); }

}  // namespace

PartsResidual check_integration_by_parts(const Field& g, const Field& h, double theta1,
                                         double theta2, PartsIdentity identity, double gamma) {
  require_same_grid(g.grid, h.grid, "check_integration_by_parts");
  if (!(theta1 > 0.5 && theta1 < 1.0) || !(theta2 > 0.5 && theta2 < 1.0)) {
    throw InvalidParameter("integration by parts needs 1/2 < theta1, theta2 < 1");
  }
  using S = FractionalOperatorSpec;
  const double order = theta1 + theta2;  // in (1, 2)
  const double alpha = order - 1.0;

  switch (identity) {
    case PartsIdentity::derivative_adjoint: {
      const Field a = apply(S::dx_weyl_marchaud(alpha), g);
      const Field b = apply(S::dx_weyl_marchaud_adjoint(alpha), h);
      const double lhs = inner(a, h);
      const double rhs = inner(b, g);
      return {std::abs(lhs - rhs), l2(a) * l2(h) + l2(b) * l2(g)};
    }
    case PartsIdentity::split_order: {
      const Field a = apply(S::dx_weyl_marchaud(alpha), g);
      const Field b = apply(S::weyl_marchaud(theta1), g);
      const Field c = apply(S::weyl_marchaud_adjoint(theta2), h);
      const double lhs = inner(a, h);
      const double rhs = -inner(b, c);
      return {std::abs(lhs - rhs), l2(a) * l2(h) + l2(b) * l2(c)};
    }
    case PartsIdentity::riesz_feller_combined:
    case PartsIdentity::riesz_feller_two_sided: {
      const auto spec = S::riesz_feller(order, gamma);
      const auto coef = riesz_feller_coeffs(order, gamma);
      const double d = one_sided_constant(order);
      const Field a = apply(spec, g);
      const Field b = apply(S::weyl_marchaud(theta1), g);
      const Field c = apply(S::weyl_marchaud_adjoint(theta2), h);
      const double lhs = inner(a, h);
      if (identity == PartsIdentity::riesz_feller_combined) {
        const double rhs = -(coef.c1 + coef.c2) / d * inner(b, c);
        return {std::abs(lhs - rhs),
                l2(a) * l2(h) + std::abs((coef.c1 + coef.c2) / d) * l2(b) * l2(c)};
      }
      const Field b2 = apply(S::weyl_marchaud_adjoint(theta1), g);
      const Field c2 = apply(S::weyl_marchaud(theta2), h);
      const double rhs = -(coef.c1 * inner(b, c) + coef.c2 * inner(b2, c2)) / d;
      return {std::abs(lhs - rhs), l2(a) * l2(h) + std::abs(coef.c1 / d) * l2(b) * l2(c) +
                                       std::abs(coef.c2 / d) * l2(b2) * l2(c2)};
    }
  }
  return {0.0, 0.0};
}

Dissipation dissipativity(const Field& g, const FractionalOperatorSpec& spec) {
  spec.validate();
  const double beta = spec.stability_index();
  const double gamma = spec.skewness();
  const double dx = g.grid.dx();

  Dissipation out{};
  out.value = -inner(g, apply_spectral(spec, g));

  const auto gh = fft::forward(g.values);
  double weighted = 0.0;
  for (std::size_t k = 0; k < gh.size(); ++k) {
    weighted += std::pow(std::abs(g.grid.wavenumber(k)), beta) * std::norm(gh[k]);
  }
  out.plancherel = std::cos(gamma * kPi / 2.0) * weighted * dx / static_cast<double>(gh.size());

  const auto half = make_symbol(FractionalOperatorSpec::weyl_marchaud(beta / 2.0), g.grid);
  const auto half_adj =
      make_symbol(FractionalOperatorSpec::weyl_marchaud_adjoint(beta / 2.0), g.grid);
  Spectrum a(gh.size()), b(gh.size());
  for (std::size_t k = 0; k < gh.size(); ++k) {
    a[k] = half.values[k] * gh[k];
    b[k] = half_adj.values[k] * gh[k];
  }
  const auto coef = riesz_feller_coeffs(beta, gamma);
  out.split_form = (coef.c1 + coef.c2) / one_sided_constant(beta) * parseval(a, b, dx).real();
  out.half_order_energy = parseval(a, a, dx).real();
  return out;
}

}  // namespace fraclaw
