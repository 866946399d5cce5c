#ifndef FRACLAW_KERNEL_HPP_
#define FRACLAW_KERNEL_HPP_

#include <array>
#include <string>
#include <vector>

#include "fraclaw/fractional_ops.hpp"

namespace fraclaw {

/// Samples of the linear semigroup kernel at one time.
struct KernelField {
  double t;
  FractionalOperatorSpec spec;
  Field field;
};

/// Kernel of the linear evolution at time t, centred at x = 0, normalized to
/// unit discrete mass. spec must be a generator.
KernelField kernel_field(double t, const FractionalOperatorSpec& spec, const Grid& grid);

/// |D|^theta d^j/dx^j K(t, .) on the grid, theta >= 0, j in {0, 1}.
Field kernel_derivative(double t, const FractionalOperatorSpec& spec, const Grid& grid,
                        double theta, int j);

/// (k * f)(x_j) = dx sum_i k(x_i) f(x_j - x_i) for a kernel sampled around 0.
Field convolve(const Field& kernel, const Field& f);

/// Evolves f by the linear semigroup for time t (exact in frequency space).
Field evolve_linear(const Field& f, const FractionalOperatorSpec& spec, double t,
                    double diffusion_scale = 1.0);

/// max |K(t,.) - t^(-1/beta) K(1, . t^(-1/beta))| / max K(t,.), with K(1,.)
/// interpolated linearly. For t < 1 the comparison is restricted to points
/// whose rescaled argument lies in the box; Unresolved is thrown when the
/// excluded kernel mass exceeds 1e-3.
double self_similarity_residual(double t, const FractionalOperatorSpec& spec, const Grid& grid);

struct DecayFit {
  std::vector<double> times;
  std::vector<double> norms;
  double slope;
  double expected;  // -(1/beta)(1 - 1/p) - (j + theta)/beta
};

/// Fits log ||(|D|^theta d^j K)(t)||_p against log t over the given times.
DecayFit time_decay_exponent(double p, double theta, bool with_dx,
                             const FractionalOperatorSpec& spec, const Grid& grid,
                             const std::vector<double>& times = {1.0, 2.0, 4.0, 8.0});

struct TailFit {
  double slope_right;
  double slope_left;
  double expected;         // -(1 + theta)
  std::size_t box_factor;  // extension of the box used for the evaluation
  double image_estimate;   // relative size of the periodic images in the window
  std::vector<double> positions;
  std::vector<double> right_values;
  std::vector<double> left_values;
};

/// Fits log ||D|^theta K(1, X)| against log X on [x_min, x_max] and on the
/// mirrored window. theta must be positive. The window must stay inside the
/// grid's box; the evaluation itself runs on a box enlarged by a power of two
/// at the same spacing so that the periodic images stay below 5e-3.
TailFit tail_decay_exponent(double theta, const FractionalOperatorSpec& spec, const Grid& grid,
                            double x_min, double x_max);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fraclaw

#endif  // FRACLAW_KERNEL_HPP_
