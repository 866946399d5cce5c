#ifndef FRACLAW_ENTROPY_REF_HPP_
#define FRACLAW_ENTROPY_REF_HPP_

#include <functional>
#include <vector>

#include "fraclaw/fractional_ops.hpp"

namespace fraclaw {

/// Entropy solution of the inviscid law started from a point mass M:
/// U(t,x) = (x/t)^(1/(q-1)) on 0 < x < r(t), zero elsewhere, with
/// r(t) = (qM/(q-1))^((q-1)/q) t^(1/q).
struct NWaveParams {
  double mass = 1.0;
  double q = 1.3;

  void validate() const;
};

double nwave_front(double t, const NWaveParams& p);
double nwave_value(double t, double x, const NWaveParams& p);
/// (qM/(q-1))^(1/q) t^(-1/q), attained at the front.
double nwave_max(double t, const NWaveParams& p);
/// Point samples on the grid.
Field nwave_samples(double t, const Grid& grid, const NWaveParams& p);
/// Exact cell averages over [x_j - dx/2, x_j + dx/2]; the discrete mass is M
/// whenever the front lies inside the box.
Field nwave_cell_averages(double t, const Grid& grid, const NWaveParams& p);
/// Closed-form L^p norm, p = +inf allowed.
double nwave_lp_norm(double t, double p, const NWaveParams& p_params);

/// exp(1 - 1/(1 - s^2)) for |s| < 1 with s = (x - center)/half_width.
struct Bump {
  double center = 0.0;
  double half_width = 1.0;

  double value(double x) const;
  double derivative(double x) const;
  double lower() const { return center - half_width; }
  double upper() const { return center + half_width; }
};

/// phi(t, x) = time(t) * space(x).
struct TestFunction {
  Bump time;
  Bump space;
};

struct EntropyResidual {
  double value;           // space-time integral of the entropy production
  double scale;           // same integral with every term in absolute value
  double nonlocal = 0.0;  // contribution of the nonlocal term (viscous form)
  /// value >= -tol * scale.
  bool admissible(double tol = 1e-4) const { return value >= -tol * scale; }
};

/// Piecewise-smooth solution known in closed form. breakpoints(t) lists the
/// x positions where it or its derivative jumps, level(t, k) the positions
/// where it crosses the value k inside a smooth piece.
struct ExactSolution {
  std::function<double(double, double)> value;
  std::function<std::vector<double>(double)> breakpoints;
  std::function<std::vector<double>(double, double)> level;
};

ExactSolution nwave_solution(const NWaveParams& p);
/// Single discontinuity from u_left to u_right moving with the
/// Rankine-Hugoniot speed, starting at x0. For u_left < u_right and a convex
/// flux this is the non-entropic expansion shock.
ExactSolution shock_solution(double u_left, double u_right, double q, double x0 = 0.0);

/// Inviscid Kruzhkov integral of an exact solution, integrated with composite
/// Gauss-Legendre rules split at the solution's breakpoints and at the
/// level set u = k.
EntropyResidual entropy_residual(const ExactSolution& u, double q, double k,
                                 const TestFunction& phi);

/// Weak-form residual int int (U phi_t + f(U) phi_x) for an exact solution.
double weak_form_residual(const ExactSolution& u, double q, const TestFunction& phi);

/// Kruzhkov integral on stored snapshots (trapezoid in x and in t). When
/// viscous is set the term |u-k| (adjoint generator)[phi] scaled by
/// diffusion_scale is added. Throws SupportEscapes if phi's support leaves the
/// box or the snapshot time range.
EntropyResidual entropy_residual(const std::vector<double>& times,
                                 const std::vector<Field>& fields, double q, double k,
                                 const TestFunction& phi, bool viscous = false,
                                 const FractionalOperatorSpec* spec = nullptr,
                                 double diffusion_scale = 1.0);

struct InitialTrace {
  std::vector<double> times;
  std::vector<double> values;  // int U(t) psi
  double limit;                // Aitken extrapolation of the last three values
  double target;               // M psi(0)
  double gap() const;
};

/// Pairing of fields sampled at decreasing times with psi. psi is evaluated
/// at the grid points.
InitialTrace initial_trace(const std::vector<double>& times, const std::vector<Field>& fields,
                           const std::function<double(double)>& psi, double mass);

}  // namespace fraclaw

#endif  // FRACLAW_ENTROPY_REF_HPP_
