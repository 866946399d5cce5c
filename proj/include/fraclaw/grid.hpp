#ifndef FRACLAW_GRID_HPP_
#define FRACLAW_GRID_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fraclaw {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

/// Uniform periodic discretization of [-L, L) with n points.
///
/// Point j sits at x_j = -L + j*dx. DFT index k carries the signed mode
/// m(k) = k for k < n/2 and k - n otherwise, so the single Nyquist mode is
/// treated as a negative frequency. Wavenumbers are xi_k = pi*m(k)/L.
class Grid {
 public:
  Grid(std::size_t n, double half_width);

  std::size_t size() const { return n_; }
  double half_width() const { return half_width_; }
  double dx() const { return dx_; }
  double length() const { return 2.0 * half_width_; }

  double x(std::size_t j) const { return -half_width_ + static_cast<double>(j) * dx_; }
  long mode(std::size_t k) const;
  double wavenumber(std::size_t k) const;

  std::vector<double> points() const;
  std::vector<double> wavenumbers() const;

  /// Index of the grid point closest to x (after periodic reduction).
  std::size_t nearest_index(double x) const;

  bool operator==(const Grid& other) const = default;

 private:
  std::size_t n_;
  double half_width_;
  double dx_;
};

/// Real samples on a grid.
struct Field {
  Grid grid;
  std::vector<double> values;

  Field(Grid g, std::vector<double> v);
  explicit Field(Grid g);

  template <class F>
  static Field sample(const Grid& g, F&& f) {
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g.x(j));
    return Field(g, std::move(v));
  }

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }
  double& operator[](std::size_t j) { return values[j]; }

  bool all_finite() const;
  double min() const;
  double max() const;
};

/// Field paired with its DFT coefficients.
struct SpectralField {
  Grid grid;
  Spectrum coefficients;
};

SpectralField to_spectral(const Field& f);
/// Inverse transform; the imaginary residue relative to the real part's
/// max-norm is written to imag_residue when requested.
Field to_physical(const SpectralField& s, double* imag_residue = nullptr);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

// Discrete quadratures on the periodic grid (trapezoid == rectangle rule).
double integrate(const Field& f);
double inner(const Field& f, const Field& g);
double lp_norm(const Field& f, double p);  // p = +inf allowed
double linf_norm(const Field& f);

/// Spectral first derivative (Nyquist mode zeroed).
Field derivative(const Field& f);

namespace fft {

/// Unnormalized forward DFT, sum_j f_j exp(-2 pi i j k / n).
Spectrum forward(std::span<const double> values);
Spectrum forward(std::span<const Complex> values);
/// Normalized inverse DFT (1/n) sum_k F_k exp(2 pi i j k / n), in place.
void inverse_in_place(Spectrum& data);
/// Normalized inverse DFT keeping the real part.
std::vector<double> inverse_real(const Spectrum& coefficients, double* imag_residue = nullptr);

/// Real-to-half-complex transform pair of fixed size with its own aligned
/// work buffers. Half spectra hold modes 0..n/2. Not shareable between
/// threads; create one per thread.
class RealTransform {
 public:
  explicit RealTransform(std::size_t n);
  ~RealTransform();
  RealTransform(const RealTransform&) = delete;
  RealTransform& operator=(const RealTransform&) = delete;

  std::size_t size() const { return n_; }
  std::size_t half_size() const { return n_ / 2 + 1; }

  /// Unnormalized forward transform of n samples into n/2+1 coefficients.
  void forward(const double* in, Complex* out);
  /// Normalized inverse of a half spectrum into n samples.
  void inverse(const Complex* in, double* out);

 private:
  std::size_t n_;
  double* real_;
  void* half_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace fft

}  // namespace fraclaw

#endif  // FRACLAW_GRID_HPP_
