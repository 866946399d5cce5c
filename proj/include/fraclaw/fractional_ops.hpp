#ifndef FRACLAW_FRACTIONAL_OPS_HPP_
#define FRACLAW_FRACTIONAL_OPS_HPP_

#include <string>

#include "fraclaw/grid.hpp"

namespace fraclaw {

enum class OperatorKind {
  weyl_marchaud,          // one-sided derivative from the left, symbol (i xi)^a
  weyl_marchaud_adjoint,  // its L2 adjoint, symbol -(-i xi)^a
  dx_weyl_marchaud,       // d/dx of the left derivative, symbol (i xi)^(1+a)
  dx_weyl_marchaud_adjoint,  // d/dx of the adjoint, symbol (-i xi)^(1+a)
  riesz_feller,           // -|xi|^beta exp(-i sgn(xi) gamma pi/2)
  fractional_laplacian,   // |xi|^theta, order stored in beta
};

std::string to_string(OperatorKind kind);

/// Which nonlocal operator is in play. Use the named constructors; they
/// validate the admissible parameter ranges.
struct FractionalOperatorSpec {
  OperatorKind kind = OperatorKind::dx_weyl_marchaud;
  double alpha = 0.5;
  double beta = 1.5;
  double gamma = 0.5;

  static FractionalOperatorSpec weyl_marchaud(double alpha);
  static FractionalOperatorSpec weyl_marchaud_adjoint(double alpha);
  static FractionalOperatorSpec dx_weyl_marchaud(double alpha);
  static FractionalOperatorSpec dx_weyl_marchaud_adjoint(double alpha);
  static FractionalOperatorSpec riesz_feller(double beta, double gamma);
  static FractionalOperatorSpec fractional_laplacian(double theta);

  /// Throws InvalidParameter naming the violated range.
  void validate() const;

  /// True for kinds that generate a dissipative semigroup (Riesz-Feller type).
  bool is_generator() const;
  /// (beta, gamma) of the equivalent Riesz-Feller operator; generators only.
  double stability_index() const;
  double skewness() const;
};

/// Value of the symbol at one wavenumber (principal branch for (i xi)^s).
Complex symbol_value(const FractionalOperatorSpec& spec, double xi);

/// Sampled symbol on a grid's wavenumbers.
struct SpectralMultiplier {
  Grid grid;
  Spectrum values;

  /// Largest |m(-xi) - conj(m(xi))| over paired frequencies (Nyquist excluded).
  double conjugate_symmetry_defect() const;
};

SpectralMultiplier make_symbol(const FractionalOperatorSpec& spec, const Grid& grid);

Field apply_spectral(const SpectralMultiplier& mult, const Field& f);
/// As apply_spectral, reporting the discarded imaginary part relative to the
/// real part's max norm.
Field apply_spectral(const SpectralMultiplier& mult, const Field& f, double& imag_residue);
Field apply_spectral(const FractionalOperatorSpec& spec, const Field& f);

/// Direct evaluation of the singular-integral representation. Samples
/// outside the box come from the periodic extension. Cost is O(n^2).
Field apply_quadrature(const FractionalOperatorSpec& spec, const Field& f);

/// 1 / Gamma(-s), the normalization of the one-sided integral of order s.
double one_sided_constant(double s);
/// 2^t Gamma((t+1)/2) / (sqrt(pi) Gamma(-t/2)) for the two-sided integral.
double laplacian_constant(double theta);

struct RieszFellerCoefficients {
  double c1;
  double c2;
};

/// Weights of the left and right one-sided parts in the splitting
/// D = Gamma(-beta) (c1 (i xi)^beta + c2 (-i xi)^beta).
RieszFellerCoefficients riesz_feller_coeffs(double beta, double gamma);

/// Integration-by-parts identities. Each variant moves part of the order
/// from g onto h.
enum class PartsIdentity {
  /// int h dx D^a[g] = int dx Dbar^a[h] g, with a = t1 + t2 - 1.
  derivative_adjoint,
  /// int dx D^a[g] h = -int D^{t1}[g] Dbar^{t2}[h].
  split_order,
  /// int D[g] h = -(c1 + c2)/d int D^{t1}[g] Dbar^{t2}[h] for the
  /// Riesz-Feller operator of order t1 + t2. Holds when c2 = 0 or the pair is
  /// symmetric (g = h, or both even).
  riesz_feller_combined,
  /// int D[g] h = -(1/d) (c1 int D^{t1}[g] Dbar^{t2}[h] + c2 int Dbar^{t1}[g] D^{t2}[h]),
  /// valid for every pair.
  riesz_feller_two_sided,
};

struct PartsResidual {
  double residual;  // |lhs - rhs|
  double scale;     // Cauchy-Schwarz bound on the terms involved
  double relative() const { return scale > 0 ? residual / scale : residual; }
};

/// gamma is used by the Riesz-Feller variants only.
PartsResidual check_integration_by_parts(const Field& g, const Field& h, double theta1,
                                         double theta2, PartsIdentity identity,
                                         double gamma = 0.0);

struct Dissipation {
  double value;              // -int g D[g], physical-space quadrature
  double plancherel;         // cos(gamma pi/2) sum |xi|^beta |g^|^2, frequency space
  double split_form;         // (c1+c2)/d int D^{beta/2}[g] Dbar^{beta/2}[g]
  double half_order_energy;  // int |D^{beta/2}[g]|^2
};

/// Energy dissipated by a generator on g. For the flagship operator
/// value = sin(alpha pi/2) * half_order_energy.
Dissipation dissipativity(const Field& g, const FractionalOperatorSpec& spec);

}  // namespace fraclaw

#endif  // FRACLAW_FRACTIONAL_OPS_HPP_
