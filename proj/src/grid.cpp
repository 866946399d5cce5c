#include "fraclaw/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "fraclaw/errors.hpp"

namespace fraclaw {

Grid::Grid(std::size_t n, double half_width) : n_(n), half_width_(half_width) {
  if (n < 4 || (n & (n - 1)) != 0) {
    throw InvalidParameter("grid size must be a power of two >= 4, got " + std::to_string(n));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidParameter("grid half width must be positive and finite");
  }
  dx_ = 2.0 * half_width / static_cast<double>(n);
}

long Grid::mode(std::size_t k) const {
  const auto n = static_cast<long>(n_);
  const auto kk = static_cast<long>(k);
  return kk < n / 2 ? kk : kk - n;
}

double Grid::wavenumber(std::size_t k) const {
  return std::numbers::pi * static_cast<double>(mode(k)) / half_width_;
}

std::vector<double> Grid::points() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = wavenumber(k);
  return out;
}

std::size_t Grid::nearest_index(double xv) const {
  const double period = length();
  double shifted = std::fmod(xv + half_width_, period);
  if (shifted < 0) shifted += period;
  auto j = static_cast<std::size_t>(std::llround(shifted / dx_));
  return j % n_;
}

Field::Field(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw GridMismatch("field has " + std::to_string(values.size()) + " samples, grid has " +
                       std::to_string(grid.size()));
  }
}

Field::Field(Grid g) : grid(g), values(g.size(), 0.0) {}

bool Field::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double Field::min() const { return *std::min_element(values.begin(), values.end()); }
double Field::max() const { return *std::max_element(values.begin(), values.end()); }

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    throw GridMismatch(std::string(where) + ": operands live on different grids");
  }
}

namespace fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW planning is not thread safe; execution with the new-array interface is.
struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex);
    std::lock_guard planner(planner_mutex());
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    // In-place plan: execution below always transforms a buffer onto itself.
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    std::lock_guard planner(planner_mutex());
    for (auto& [key, p] : plans) fftw_destroy_plan(p);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(Spectrum& data, int sign) {
  fftw_plan p = cache().get(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

Spectrum forward(std::span<const double> values) {
  Spectrum data(values.begin(), values.end());
  execute(data, FFTW_FORWARD);
  return data;
}

Spectrum forward(std::span<const Complex> values) {
  Spectrum data(values.begin(), values.end());
  execute(data, FFTW_FORWARD);
  return data;
}

void inverse_in_place(Spectrum& data) {
  execute(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
}

std::vector<double> inverse_real(const Spectrum& coefficients, double* imag_residue) {
  Spectrum data = coefficients;
  inverse_in_place(data);
  std::vector<double> out(data.size());
  double re_max = 0.0;
  double im_max = 0.0;
  for (std::size_t j = 0; j < data.size(); ++j) {
    out[j] = data[j].real();
    re_max = std::max(re_max, std::abs(data[j].real()));
    im_max = std::max(im_max, std::abs(data[j].imag()));
  }
  if (imag_residue != nullptr) *imag_residue = re_max > 0 ? im_max / re_max : im_max;
  return out;
}

RealTransform::RealTransform(std::size_t n) : n_(n) {
  std::lock_guard planner(planner_mutex());
  real_ = fftw_alloc_real(n);
  auto* half = fftw_alloc_complex(n / 2 + 1);
  half_ = half;
  forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, half, FFTW_ESTIMATE);
  // c2r destroys its input; execution always goes through the owned buffers.
  inverse_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), half, real_, FFTW_ESTIMATE);
}

RealTransform::~RealTransform() {
  std::lock_guard planner(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(half_);
}

void RealTransform::forward(const double* in, Complex* out) {
  std::copy(in, in + n_, real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* h = static_cast<const Complex*>(half_);
  std::copy(h, h + half_size(), out);
}

void RealTransform::inverse(const Complex* in, double* out) {
  std::copy(in, in + half_size(), static_cast<Complex*>(half_));
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = real_[j] * scale;
}

}  // namespace fft

SpectralField to_spectral(const Field& f) { return {f.grid, fft::forward(f.values)}; }

Field to_physical(const SpectralField& s, double* imag_residue) {
  return Field(s.grid, fft::inverse_real(s.coefficients, imag_residue));
}

double integrate(const Field& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.grid.dx();
}

double inner(const Field& f, const Field& g) {
  require_same_grid(f.grid, g.grid, "inner");
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * g[j];
  return s * f.grid.dx();
}

double linf_norm(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p)) return linf_norm(f);
  if (!(p >= 1.0)) throw InvalidParameter("L^p norm needs p >= 1");
  double s = 0.0;
  for (double v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid.dx(), 1.0 / p);
}

Field derivative(const Field& f) {
  auto s = to_spectral(f);
  const std::size_t n = f.size();
  for (std::size_t k = 0; k < n; ++k) {
    s.coefficients[k] *= (k == n / 2) ? Complex(0.0) : Complex(0.0, f.grid.wavenumber(k));
  }
  return to_physical(s);
}

}  // namespace fraclaw
