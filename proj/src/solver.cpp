#include "fraclaw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fraclaw/errors.hpp"

namespace fraclaw {

std::string to_string(Scheme s) { return s == Scheme::etd1 ? "etd1" : "etd2"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "etd1") return Scheme::etd1;
  if (s == "etd2") return Scheme::etd2;
  throw InvalidParameter("scheme must be etd1 or etd2, got '" + s + "'");
}

double flux(double v, double q, double delta) {
  if (delta == 0.0) return std::pow(std::abs(v), q - 1.0) * v / q;
  return std::pow(delta * delta + v * v, (q - 1.0) / 2.0) * (v + delta) / q;
}

void SolverConfig::validate() const {
  if (!(q > 1.0)) throw InvalidParameter("q > 1 violated, q = " + std::to_string(q));
  spec.validate();
  if (!spec.is_generator()) {
    throw InvalidParameter("solver needs a dissipative generator, got " + to_string(spec.kind));
  }
  if (!(dt > 0.0)) throw InvalidParameter("dt > 0 violated");
  if (!(t_end > 0.0)) throw InvalidParameter("t_end > 0 violated");
  if (!(delta >= 0.0)) throw InvalidParameter("delta >= 0 violated");
  if (!(epsilon >= 0.0)) throw InvalidParameter("epsilon >= 0 violated");
  if (!(diffusion_scale > 0.0)) throw InvalidParameter("diffusion_scale > 0 violated");
}

bool SolverConfig::subcritical() const { return q < spec.stability_index(); }

double SolverConfig::dt_limit(double max_abs_u) const {
  const double speed = std::pow(max_abs_u, q - 1.0);
  return speed > 0.0 ? 0.5 * grid.dx() / speed : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------

namespace {

// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, Taylor near 0.
Complex phi1(Complex z) {
  if (std::abs(z) < 1e-2) {
    return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  }
  return (std::exp(z) - 1.0) / z;
}

Complex phi2(Complex z) {
  if (std::abs(z) < 1e-2) {
    return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0)));
  }
  return (std::exp(z) - 1.0 - z) / (z * z);
}

}  // namespace

Stepper::Stepper(SolverConfig config)
    : config_(std::move(config)), fft_(config_.grid.size()) {
  config_.validate();
  const auto& g = config_.grid;
  const std::size_t n = g.size();
  const std::size_t half = n / 2 + 1;
  symbol_.resize(half);
  mask_.assign(half, 1.0);
  xi_.resize(half);
  for (std::size_t k = 0; k < half; ++k) {
    xi_[k] = g.wavenumber(k);
    symbol_[k] = symbol_value(config_.spec, xi_[k]);
    if (k == n / 2 || (config_.dealias && 3 * k >= n)) mask_[k] = 0.0;
  }
  work_.resize(n);
  nu_.resize(half);
  na_.resize(half);
  a_.resize(half);
}

Spectrum Stepper::transform(const Field& f) {
  require_same_grid(f.grid, config_.grid, "Stepper::transform");
  Spectrum out(fft_.half_size());
  fft_.forward(f.values.data(), out.data());
  return out;
}

Field Stepper::field(const Spectrum& state) {
  Field f(config_.grid);
  fft_.inverse(state.data(), f.values.data());
  return f;
}

const Stepper::Multipliers& Stepper::multipliers(double h) {
  auto it = cache_.find(h);
  if (it != cache_.end()) return it->second;
  const std::size_t half = symbol_.size();
  Multipliers m{Spectrum(half), Spectrum(half), Spectrum(half)};
  for (std::size_t k = 0; k < half; ++k) {
    const Complex z = h * config_.diffusion_scale * symbol_[k];
    m.e[k] = std::exp(z);
    m.p1[k] = h * phi1(z);
    m.p2[k] = h * phi2(z);
  }
  return cache_.emplace(h, std::move(m)).first->second;
}

void Stepper::nonlinear_into(const Spectrum& state, Spectrum& out) {
  const std::size_t half = state.size();
  if (!config_.nonlinear) {
    std::fill(out.begin(), out.end(), Complex(0.0));
    return;
  }
  fft_.inverse(state.data(), work_.data());
  const double q = config_.q;
  const double delta = config_.delta;
  for (double& v : work_) v = flux(v, q, delta);
  fft_.forward(work_.data(), out.data());
  for (std::size_t k = 0; k < half; ++k) out[k] *= Complex(0.0, -xi_[k] * mask_[k]);
}

Spectrum Stepper::nonlinear_term(const Spectrum& state) {
  Spectrum out(state.size());
  nonlinear_into(state, out);
  return out;
}

void Stepper::advance(Spectrum& state, double h) {
  const auto& m = multipliers(h);
  const std::size_t half = state.size();
  nonlinear_into(state, nu_);
  for (std::size_t k = 0; k < half; ++k) a_[k] = m.e[k] * state[k] + m.p1[k] * nu_[k];
  if (config_.scheme == Scheme::etd2) {
    nonlinear_into(a_, na_);
    for (std::size_t k = 0; k < half; ++k) a_[k] += m.p2[k] * (na_[k] - nu_[k]);
  }
  state.swap(a_);
}

Field step(const Field& state, const SolverConfig& config) {
  require_same_grid(state.grid, config.grid, "step");
  Stepper stepper(config);
  auto s = stepper.transform(state);
  stepper.advance(s, config.dt);
  Field out = stepper.field(s);
  if (!out.all_finite()) throw BlowUp("non-finite values after one step", config.dt);
  return out;
}

// ---------------------------------------------------------------------------

std::size_t Trajectory::index_of(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
  }
  throw InvalidParameter("no snapshot at t = " + std::to_string(t));
}

std::vector<double> uniform_snapshots(double dt, double t_end, int every) {
  if (!(dt > 0.0) || every < 1) throw InvalidParameter("uniform_snapshots: bad spacing");
  const auto steps = static_cast<long>(std::llround(t_end / dt));
  std::vector<double> out;
  for (long s = every; s <= steps; s += every) out.push_back(static_cast<double>(s) * dt);
  return out;
}

Trajectory solve(const Field& u0, const SolverConfig& config,
                 const std::vector<double>& snapshot_times) {
  config.validate();
  require_same_grid(u0.grid, config.grid, "solve");
  if (!u0.all_finite()) throw InvalidParameter("solve: initial data must be finite");
  double previous = 0.0;
  for (double t : snapshot_times) {
    if (!(t > previous) || t > config.t_end * (1.0 + 1e-12)) {
      throw InvalidParameter("solve: snapshot times must increase within (0, t_end]");
    }
    previous = t;
  }

  Trajectory traj{config, u0, {}, {}, 0.0};
  for (double& v : traj.initial.values) v += config.epsilon;
  traj.initial_mass = integrate(traj.initial);

  if (config.nonlinear) {
    const double limit = config.dt_limit(linf_norm(traj.initial));
    if (config.dt > limit) {
      throw InvalidParameter("dt = " + std::to_string(config.dt) +
                             " exceeds the transport limit 0.5 dx / max|u|^(q-1) = " +
                             std::to_string(limit));
    }
  }

  Stepper stepper(config);
  Spectrum state = stepper.transform(traj.initial);
  double t = 0.0;
  for (double target : snapshot_times) {
    const double span = target - t;
    const auto steps = std::max<long>(1, static_cast<long>(std::ceil(span / config.dt - 1e-9)));
    const double h = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      stepper.advance(state, h);
      if (!std::isfinite(std::abs(state[0])) || !std::isfinite(std::abs(state[state.size() / 2]))) {
        throw BlowUp("non-finite spectrum", t + static_cast<double>(s + 1) * h);
      }
    }
    t = target;
    Field snap = stepper.field(state);
    if (!snap.all_finite()) throw BlowUp("non-finite values in snapshot", t);
    traj.times.push_back(t);
    traj.fields.push_back(std::move(snap));
  }
  return traj;
}

double mild_residual(const Trajectory& traj, double t) {
  const std::size_t last = traj.index_of(t);
  if (last + 1 < 8) {
    throw InsufficientData("mild_residual: need at least 8 snapshots up to t");
  }
  const auto& cfg = traj.config;
  Stepper stepper(cfg);
  const auto& sym = stepper.symbol();
  const std::size_t half = sym.size();

  // Nodes: 0 (initial data) followed by the snapshots up to t.
  std::vector<double> nodes{0.0};
  std::vector<const Field*> states{&traj.initial};
  for (std::size_t i = 0; i <= last; ++i) {
    nodes.push_back(traj.times[i]);
    states.push_back(&traj.fields[i]);
  }

  const auto u0_hat = stepper.transform(traj.initial);
  Spectrum residual = stepper.transform(traj.fields[last]);
  for (std::size_t k = 0; k < half; ++k) {
    residual[k] -= std::exp(t * cfg.diffusion_scale * sym[k]) * u0_hat[k];
  }
  if (cfg.nonlinear) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double w = 0.0;
      if (i > 0) w += 0.5 * (nodes[i] - nodes[i - 1]);
      if (i + 1 < nodes.size()) w += 0.5 * (nodes[i + 1] - nodes[i]);
      const auto nl = stepper.nonlinear_term(stepper.transform(*states[i]));
      const double lag = t - nodes[i];
      for (std::size_t k = 0; k < half; ++k) {
        residual[k] -= w * std::exp(lag * cfg.diffusion_scale * sym[k]) * nl[k];
      }
    }
  }
  return linf_norm(stepper.field(residual));
}

// ---------------------------------------------------------------------------

InitialProfile InitialProfile::gaussian(double mass, double width, double center) {
  if (!(mass > 0.0) || !(width > 0.0)) {
    throw InvalidParameter("gaussian profile needs positive mass and width");
  }
  return {Kind::gaussian, mass, width, center};
}

InitialProfile InitialProfile::box(double mass, double width, double center) {
  if (!(mass > 0.0) || !(width > 0.0)) {
    throw InvalidParameter("box profile needs positive mass and width");
  }
  return {Kind::box, mass, width, center};
}

double InitialProfile::operator()(double x) const {
  const double y = x - center;
  if (kind == Kind::gaussian) {
    return mass * std::exp(-0.5 * y * y / (width * width)) /
           (width * std::sqrt(2.0 * std::numbers::pi));
  }
  return std::abs(y) < 0.5 * width ? mass / width : 0.0;
}

Field InitialProfile::sample(const Grid& grid) const {
  Field f = Field::sample(grid, *this);
  const double m = integrate(f);
  if (!(m > 0.0)) throw Unresolved("initial profile has no samples on the grid");
  for (double& v : f.values) v *= mass / m;
  return f;
}

InitialProfile InitialProfile::zoomed(double lambda) const {
  InitialProfile p = *this;
  p.width /= lambda;
  p.center /= lambda;
  return p;
}

InitialProfile::Kind profile_kind_from_string(const std::string& s) {
  if (s == "gaussian") return InitialProfile::Kind::gaussian;
  if (s == "box") return InitialProfile::Kind::box;
  throw InvalidParameter("initial kind must be gaussian or box, got '" + s + "'");
}

std::string to_string(InitialProfile::Kind k) {
  return k == InitialProfile::Kind::gaussian ? "gaussian" : "box";
}

Trajectory solve_rescaled(const InitialProfile& u0, const SolverConfig& config, double lambda,
                          const std::vector<double>& snapshot_times) {
  if (!(lambda >= 1.0)) throw InvalidParameter("solve_rescaled: lambda >= 1 violated");
  const InitialProfile z = u0.zoomed(lambda);
  const double min_width = (z.kind == InitialProfile::Kind::gaussian ? 4.0 : 8.0) * config.grid.dx();
  if (z.width < min_width) {
    throw Unresolved("solve_rescaled: zoomed data of width " + std::to_string(z.width) +
                     " is below " + std::to_string(min_width) + " on this grid");
  }
  SolverConfig c = config;
  c.diffusion_scale = config.diffusion_scale * std::pow(lambda, config.q - config.spec.stability_index());
  return solve(z.sample(config.grid), c, snapshot_times);
}

}  // namespace fraclaw
