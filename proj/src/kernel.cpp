#include "fraclaw/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fraclaw/errors.hpp"

namespace fraclaw {

namespace {

// Spectral resolution threshold: |exp(t psi)| at the Nyquist wavenumber.
constexpr double kNyquistFloor = 1e-10;

void require_generator(const FractionalOperatorSpec& spec) {
  spec.validate();
  if (!spec.is_generator()) {
    throw InvalidParameter("kernel: " + to_string(spec.kind) + " does not generate a semigroup");
  }
}

void require_resolved(double t, const FractionalOperatorSpec& spec, const Grid& grid,
                      double diffusion_scale = 1.0) {
  const double xi_nyq = std::numbers::pi * static_cast<double>(grid.size() / 2) / grid.half_width();
  const double decay = std::exp(t * diffusion_scale * symbol_value(spec, -xi_nyq).real());
  if (decay > kNyquistFloor) {
    throw Unresolved("kernel at t = " + std::to_string(t) +
                     " is not resolved: |exp(t psi)| at Nyquist = " + std::to_string(decay));
  }
}

// Inverse transform of spectral samples m(xi_k) into a function sampled on
// x_j = -L + j dx, approximating (1/2pi) int m(xi) exp(i xi x) dxi.
std::vector<double> centred_inverse(Spectrum coeffs, const Grid& grid) {
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (grid.mode(k) % 2 != 0) coeffs[k] = -coeffs[k];
  }
  auto v = fft::inverse_real(coeffs);
  for (double& x : v) x /= grid.dx();
  return v;
}

}  // namespace

KernelField kernel_field(double t, const FractionalOperatorSpec& spec, const Grid& grid) {
  if (!(t > 0.0)) throw InvalidParameter("kernel_field: t must be positive");
  require_generator(spec);
  const auto sym = make_symbol(spec, grid);
  Spectrum c(grid.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::exp(t * sym.values[k]);
  Field f(grid, centred_inverse(std::move(c), grid));
  const double mass = integrate(f);
  for (double& v : f.values) v /= mass;
  return {t, spec, std::move(f)};
}

Field kernel_derivative(double t, const FractionalOperatorSpec& spec, const Grid& grid,
                        double theta, int j) {
  if (!(t > 0.0)) throw InvalidParameter("kernel_derivative: t must be positive");
  if (!(theta >= 0.0)) throw InvalidParameter("kernel_derivative: theta must be >= 0");
  if (j != 0 && j != 1) throw InvalidParameter("kernel_derivative: j must be 0 or 1");
  require_generator(spec);
  const auto sym = make_symbol(spec, grid);
  const std::size_t n = grid.size();
  Spectrum c(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = grid.wavenumber(k);
    Complex m = std::exp(t * sym.values[k]);
    if (theta > 0.0) m *= (xi == 0.0 ? 0.0 : std::pow(std::abs(xi), theta));
    if (j == 1) m *= (k == n / 2) ? Complex(0.0) : Complex(0.0, xi);
    c[k] = m;
  }
  return Field(grid, centred_inverse(std::move(c), grid));
}

Field convolve(const Field& kernel, const Field& f) {
  require_same_grid(kernel.grid, f.grid, "convolve");
  const std::size_t n = f.size();
  auto a = fft::forward(kernel.values);
  const auto b = fft::forward(f.values);
  for (std::size_t k = 0; k < n; ++k) a[k] *= b[k];
  auto v = fft::inverse_real(a);
  // Kernel index i sits at offset (i - n/2) dx from the origin.
  std::vector<double> out(n);
  const double dx = f.grid.dx();
  for (std::size_t j = 0; j < n; ++j) out[j] = dx * v[(j + n / 2) % n];
  return Field(f.grid, std::move(out));
}

Field evolve_linear(const Field& f, const FractionalOperatorSpec& spec, double t,
                    double diffusion_scale) {
  require_generator(spec);
  if (t == 0.0) return f;
  const auto sym = make_symbol(spec, f.grid);
  auto s = to_spectral(f);
  for (std::size_t k = 0; k < s.coefficients.size(); ++k) {
    s.coefficients[k] *= std::exp(t * diffusion_scale * sym.values[k]);
  }
  return to_physical(s);
}

double self_similarity_residual(double t, const FractionalOperatorSpec& spec, const Grid& grid) {
  if (!(t > 0.0)) throw InvalidParameter("self_similarity_residual: t must be positive");
  require_generator(spec);
  const double beta = spec.stability_index();
  const auto k1 = kernel_field(1.0, spec, grid).field;
  const auto kt = kernel_field(t, spec, grid).field;
  const double scale = std::pow(t, 1.0 / beta);
  const std::size_t n = grid.size();
  const double dx = grid.dx();

  double worst = 0.0;
  double excluded = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double arg = grid.x(j) / scale;
    const double pos = (arg + grid.half_width()) / dx;
    if (pos < 0.0 || pos > static_cast<double>(n - 1)) {
      excluded += std::abs(kt[j]) * dx;
      continue;
    }
    const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
    const double w = pos - static_cast<double>(i);
    const double interp = ((1.0 - w) * k1[i] + w * k1[i + 1]) / scale;
    worst = std::max(worst, std::abs(kt[j] - interp));
  }
  if (excluded > 1e-3) {
    throw Unresolved("self_similarity_residual: rescaled argument leaves the box; excluded mass " +
                     std::to_string(excluded));
  }
  return worst / kt.max();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientData("loglog_slope needs at least two matching samples");
  }
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw InvalidParameter("loglog_slope needs positive samples");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

DecayFit time_decay_exponent(double p, double theta, bool with_dx,
                             const FractionalOperatorSpec& spec, const Grid& grid,
                             const std::vector<double>& times) {
  if (!(p >= 1.0)) throw InvalidParameter("time_decay_exponent: p must be >= 1");
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw InvalidParameter("time_decay_exponent: theta must lie in [0,1)");
  }
  if (times.size() < 4) throw InsufficientData("time_decay_exponent: need at least 4 times");
  require_generator(spec);
  const double beta = spec.stability_index();
  const int j = with_dx ? 1 : 0;

  DecayFit fit{times, {}, 0.0, 0.0};
  for (double t : times) {
    require_resolved(t, spec, grid);
    fit.norms.push_back(lp_norm(kernel_derivative(t, spec, grid, theta, j), p));
  }
  fit.slope = loglog_slope(fit.times, fit.norms);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  fit.expected = -(1.0 / beta) * (1.0 - inv_p) - (j + theta) / beta;
  return fit;
}

namespace {

// Relative weight of the periodic images of an |x|^-(1+theta) tail at
// distance x_max inside a box of half width big_l.
double image_weight(double x_max, double big_l, double theta) {
  double acc = 0.0;
  for (int k = 1; k <= 2000; ++k) {
    const double period = 2.0 * k * big_l;
    acc += std::pow(x_max / (period - x_max), 1.0 + theta);
    acc += std::pow(x_max / (period + x_max), 1.0 + theta);
  }
  return acc;
}

}  // namespace

TailFit tail_decay_exponent(double theta, const FractionalOperatorSpec& spec, const Grid& grid,
                            double x_min, double x_max) {
  if (!(theta > 0.0)) {
    throw InvalidParameter("tail_decay_exponent: only theta > 0 carries the tail bound");
  }
  require_generator(spec);
  if (!(x_min > 0.0 && x_max > x_min)) {
    throw InvalidParameter("tail_decay_exponent: window needs 0 < x_min < x_max");
  }
  if (x_max >= grid.half_width() - grid.dx()) {
    throw Unresolved("tail_decay_exponent: window touches the box edge");
  }
  require_resolved(1.0, spec, grid);

  constexpr double kImageTolerance = 5e-3;
  constexpr std::size_t kMaxFactor = 64;
  std::size_t factor = 1;
  while (factor < kMaxFactor &&
         image_weight(x_max, grid.half_width() * static_cast<double>(factor), theta) >
             kImageTolerance) {
    factor *= 2;
  }
  const Grid big(grid.size() * factor, grid.half_width() * static_cast<double>(factor));
  const Field d = kernel_derivative(1.0, spec, big, theta, 0);

  TailFit fit{};
  fit.expected = -(1.0 + theta);
  fit.box_factor = factor;
  fit.image_estimate = image_weight(x_max, big.half_width(), theta);

  const std::size_t samples = 48;
  const double ratio = std::log(x_max / x_min) / static_cast<double>(samples - 1);
  std::vector<double> pos_r, val_r, pos_l, val_l;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = x_min * std::exp(ratio * static_cast<double>(i));
    const std::size_t jr = big.nearest_index(x);
    const std::size_t jl = big.nearest_index(-x);
    fit.positions.push_back(std::abs(big.x(jr)));
    fit.right_values.push_back(std::abs(d[jr]));
    fit.left_values.push_back(std::abs(d[jl]));
    pos_r.push_back(std::abs(big.x(jr)));
    val_r.push_back(std::abs(d[jr]));
    pos_l.push_back(std::abs(big.x(jl)));
    val_l.push_back(std::abs(d[jl]));
  }
  fit.slope_right = loglog_slope(pos_r, val_r);
  fit.slope_left = loglog_slope(pos_l, val_l);
  return fit;
}

}  // namespace fraclaw
