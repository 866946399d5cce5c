#ifndef FRACLAW_SOLVER_HPP_
#define FRACLAW_SOLVER_HPP_

#include <map>
#include <string>
#include <vector>

#include "fraclaw/fractional_ops.hpp"

namespace fraclaw {

enum class Scheme { etd1, etd2 };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Flux |v|^(q-1) v / q, or its regularization
/// (delta^2 + v^2)^((q-1)/2) (v + delta) / q when delta > 0.
double flux(double v, double q, double delta = 0.0);

struct SolverConfig {
  double q = 1.3;
  FractionalOperatorSpec spec = FractionalOperatorSpec::dx_weyl_marchaud(0.5);
  Grid grid{4096, 100.0};
  double dt = 1e-3;
  double t_end = 16.0;
  Scheme scheme = Scheme::etd2;
  bool dealias = true;
  double delta = 0.0;
  double epsilon = 0.0;
  /// Factor on the nonlocal term; lambda^(q - beta) for rescaled runs.
  double diffusion_scale = 1.0;
  /// When false the flux is dropped and the run is purely linear.
  bool nonlinear = true;

  void validate() const;
  /// 1 < q < beta: the regime in which the N-wave is the large-time profile.
  bool subcritical() const;
  /// 0.5 dx / max|u|^(q-1), the transport limit on the explicit part.
  double dt_limit(double max_abs_u) const;
};

/// ETD stepper in frequency space. States are half spectra (modes 0..n/2 of
/// a real field). Multipliers are cached per step size. Holds FFT work
/// buffers, so one instance per thread.
class Stepper {
 public:
  explicit Stepper(SolverConfig config);

  const SolverConfig& config() const { return config_; }

  Spectrum transform(const Field& f);
  Field field(const Spectrum& state);

  /// One step of size h, in place.
  void advance(Spectrum& state, double h);

  /// -i xi * mask * DFT(flux(u)) for the state u^.
  Spectrum nonlinear_term(const Spectrum& state);

  const std::vector<double>& dealias_mask() const { return mask_; }
  /// Generator symbol on modes 0..n/2.
  const Spectrum& symbol() const { return symbol_; }

 private:
  struct Multipliers {
    Spectrum e, p1, p2;
  };
  const Multipliers& multipliers(double h);
  void nonlinear_into(const Spectrum& state, Spectrum& out);

  SolverConfig config_;
  fft::RealTransform fft_;
  Spectrum symbol_;
  std::vector<double> mask_;
  std::vector<double> xi_;
  std::vector<double> work_;
  Spectrum nu_, na_, a_;
  std::map<double, Multipliers> cache_;
};

/// One step of size config.dt.
Field step(const Field& state, const SolverConfig& config);

struct Trajectory {
  SolverConfig config;
  Field initial;  // includes the epsilon shift
  std::vector<double> times;
  std::vector<Field> fields;
  double initial_mass = 0.0;

  /// Index of the snapshot at time t (within 1e-9); throws if absent.
  std::size_t index_of(double t) const;
  const Field& at(double t) const { return fields[index_of(t)]; }
};

/// Integrates from u0 + epsilon and records the listed times exactly; each
/// interval between snapshots is split into equal steps no longer than dt.
/// Throws BlowUp on non-finite values.
Trajectory solve(const Field& u0, const SolverConfig& config,
                 const std::vector<double>& snapshot_times);

/// Snapshot times every `every` steps of size dt up to t_end.
std::vector<double> uniform_snapshots(double dt, double t_end, int every);

/// L-infinity residual of the Duhamel formula at snapshot time t, with the
/// time integral done by the trapezoid rule over the stored snapshots.
double mild_residual(const Trajectory& traj, double t);

/// Nonnegative initial profiles with prescribed mass.
struct InitialProfile {
  enum class Kind { gaussian, box };
  Kind kind = Kind::gaussian;
  double mass = 1.0;
  double width = 1.0;  // standard deviation, or full width of the box
  double center = 0.0;

  static InitialProfile gaussian(double mass, double width, double center = 0.0);
  static InitialProfile box(double mass, double width, double center = 0.0);

  double operator()(double x) const;
  /// Samples on the grid, rescaled so that the discrete mass equals `mass`.
  Field sample(const Grid& grid) const;
  /// Same profile zoomed as lambda u0(lambda y); the mass is unchanged.
  InitialProfile zoomed(double lambda) const;
};

InitialProfile::Kind profile_kind_from_string(const std::string& s);
std::string to_string(InitialProfile::Kind k);

/// Solves the zoomed problem: data lambda u0(lambda y) and nonlocal term
/// scaled by lambda^(q - beta). Throws Unresolved if the zoomed data is too
/// narrow for the grid.
Trajectory solve_rescaled(const InitialProfile& u0, const SolverConfig& config, double lambda,
                          const std::vector<double>& snapshot_times);

}  // namespace fraclaw

#endif  // FRACLAW_SOLVER_HPP_
