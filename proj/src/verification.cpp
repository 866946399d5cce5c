#include "fraclaw/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fraclaw/errors.hpp"
#include "fraclaw/kernel.hpp"

namespace fraclaw {

namespace {

// Spectral derivative with the two-thirds mask applied.
Field dealiased_derivative(const Field& f) {
  auto s = to_spectral(f);
  const std::size_t n = f.size();
  for (std::size_t k = 0; k < n; ++k) {
    const long m = std::labs(f.grid.mode(k));
    const bool keep = 3 * m < static_cast<long>(n);
    s.coefficients[k] *= keep ? Complex(0.0, f.grid.wavenumber(k)) : Complex(0.0);
  }
  return to_physical(s);
}

// sum |xi|^order |u^|^2 dx / n, the squared homogeneous Sobolev seminorm.
double seminorm_squared(const Field& u, double order) {
  const auto c = fft::forward(u.values);
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    acc += std::pow(std::abs(u.grid.wavenumber(k)), order) * std::norm(c[k]);
  }
  return acc * u.grid.dx() / static_cast<double>(c.size());
}

Field shifted(const Field& u, double epsilon) {
  Field v = u;
  for (double& x : v.values) x -= epsilon;
  return v;
}

bool uniform(const std::vector<double>& t) {
  if (t.size() < 3) return false;
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * h) return false;
  }
  return true;
}

// Simpson on uniform nodes with an even number of intervals, else trapezoid.
double time_integral(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t m = t.size();
  if (m < 2) return 0.0;
  if (uniform(t) && (m - 1) % 2 == 0) {
    const double h = t[1] - t[0];
    double acc = y.front() + y.back();
    for (std::size_t i = 1; i + 1 < m; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
    return acc * h / 3.0;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) acc += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
  return acc;
}

}  // namespace

std::vector<std::string> diagnostics_columns() {
  return {"t",         "mass",        "l1",          "l2",
          "linf",      "oleinik_sup", "max_value",   "max_slope",
          "dx_l1_local", "energy_density", "tail_mass"};
}

double oleinik_sup(const Field& u, double q) {
  Field w = u;
  for (double& v : w.values) v = std::pow(std::max(v, 0.0), q - 1.0);
  return dealiased_derivative(w).max();
}

double oleinik_sup_forward(const Field& u, double q) {
  const std::size_t n = u.size();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = std::pow(std::max(u[j], 0.0), q - 1.0);
    const double b = std::pow(std::max(u[j + 1], 0.0), q - 1.0);
    worst = std::max(worst, (b - a) / u.grid.dx());
  }
  return worst;
}

DiagnosticsRecord diagnose_field(const Field& u, double t, const SolverConfig& config, double R) {
  if (!(R > 0.0) || !(2.0 * R < config.grid.half_width())) {
    throw InvalidParameter("diagnose: need 0 < 2R < L");
  }
  const Field v = shifted(u, config.epsilon);
  DiagnosticsRecord r;
  r.t = t;
  r.mass = integrate(v);
  r.l1 = lp_norm(v, 1.0);
  r.l2 = lp_norm(v, 2.0);
  r.linf = linf_norm(v);
  r.oleinik_sup = oleinik_sup(u, config.q);
  r.max_value = v.max();
  const Field dv = dealiased_derivative(v);
  r.max_slope = dv.max();
  double local = 0.0, tail = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = std::abs(v.grid.x(j));
    if (x < R) local += std::abs(dv[j]);
    if (x > 2.0 * R) tail += v[j];
  }
  r.dx_l1_local = local * v.grid.dx();
  r.tail_mass = tail * v.grid.dx();
  r.energy_density = seminorm_squared(v, config.spec.stability_index());
  return r;
}

std::vector<DiagnosticsRecord> diagnose(const Trajectory& traj, const std::vector<double>& times,
                                        double R) {
  std::vector<DiagnosticsRecord> out;
  for (double t : times) out.push_back(diagnose_field(traj.at(t), t, traj.config, R));
  return out;
}

OleinikResult oleinik_check(const Trajectory& traj, double t0) {
  if (!(traj.config.epsilon > 0.0)) {
    throw InvalidParameter("oleinik_check: needs a run with positive epsilon shift");
  }
  OleinikResult r;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t0) continue;
    r.times.push_back(t);
    r.ratios.push_back(t * oleinik_sup(traj.fields[i], traj.config.q));
  }
  if (r.times.empty()) throw InsufficientData("oleinik_check: no snapshots after t0");
  r.worst = *std::max_element(r.ratios.begin(), r.ratios.end());
  r.passed = r.worst <= 1.0 + 1e-2;
  return r;
}

double lp_decay_bound(double t, double p, double q, double mass) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double e = (1.0 - inv_p) / q;  // (p-1)/(pq)
  return std::pow(q / (q - 1.0), e) * std::pow(mass, e + inv_p) * std::pow(t, -e);
}

std::vector<DecayExponent> decay_exponents(const Trajectory& traj, const std::vector<double>& p_list,
                                           double mass) {
  const auto& t = traj.times;
  if (t.size() < 3 || t.back() < 10.0 * t.front()) {
    throw InsufficientData("decay_exponents: snapshots must span a decade");
  }
  const double q = traj.config.q;
  std::vector<DecayExponent> out;
  for (double p : p_list) {
    DecayExponent d{p, {}, {}, 0.0, 0.0, true, false};
    std::vector<double> tl, nl;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double norm = lp_norm(shifted(traj.fields[i], traj.config.epsilon), p);
      const double bound = lp_decay_bound(t[i], p, q, mass);
      d.norms.push_back(norm);
      d.bounds.push_back(bound);
      if (norm > bound * (1.0 + 1e-12)) d.bound_holds = false;
      if (t[i] >= t.back() / 10.0) {
        tl.push_back(t[i]);
        nl.push_back(norm);
      }
    }
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    d.bound_slope = -(1.0 - inv_p) / q;
    d.fitted_slope = loglog_slope(tl, nl);
    d.rate_holds = d.fitted_slope >= d.bound_slope - 0.05;
    out.push_back(std::move(d));
  }
  return out;
}

EnergyBudget energy_budget(const Trajectory& traj, double tau, double T, double mass) {
  if (!(tau > 0.0 && tau < T)) throw InvalidParameter("energy_budget: need 0 < tau < T");
  const std::size_t a = traj.index_of(tau);
  const std::size_t b = traj.index_of(T);
  const double order = traj.config.spec.stability_index();
  std::vector<double> t, y;
  for (std::size_t i = a; i <= b; ++i) {
    t.push_back(traj.times[i]);
    y.push_back(seminorm_squared(traj.fields[i], order));
  }
  const double q = traj.config.q;
  const double rhs = 0.5 * std::pow(q / (q - 1.0), 1.0 / q) * std::pow(tau, -1.0 / q) *
                     std::pow(mass, (q + 1.0) / q);
  return {time_integral(t, y), rhs};
}

double dissipation_rate(const Field& u, const SolverConfig& config) {
  const double beta = config.spec.stability_index();
  const double gamma = config.spec.skewness();
  return config.diffusion_scale * std::cos(gamma * std::numbers::pi / 2.0) *
         seminorm_squared(u, beta);
}

EnergyIdentity energy_identity(const Trajectory& traj) {
  std::vector<double> t{0.0};
  std::vector<const Field*> f{&traj.initial};
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    t.push_back(traj.times[i]);
    f.push_back(&traj.fields[i]);
  }
  EnergyIdentity out;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    if (std::abs(h1 - h2) > 1e-9 * h1) continue;
    const double e_minus = 0.5 * std::pow(lp_norm(*f[i - 1], 2.0), 2);
    const double e_plus = 0.5 * std::pow(lp_norm(*f[i + 1], 2.0), 2);
    const double rate = dissipation_rate(*f[i], traj.config);
    const double deriv = (e_plus - e_minus) / (h1 + h2);
    out.times.push_back(t[i]);
    out.residuals.push_back(std::abs(deriv + rate) / rate);
  }
  if (out.times.empty()) throw InsufficientData("energy_identity: no equally spaced triples");
  out.worst = *std::max_element(out.residuals.begin(), out.residuals.end());
  return out;
}

std::vector<TailSample> tail_samples(const Trajectory& traj, const InitialProfile& u0,
                                     double lambda, const std::vector<double>& radii) {
  const Grid& g = traj.config.grid;
  const Field data = u0.sample(g);
  const double q = traj.config.q;
  const double beta = traj.config.spec.stability_index();
  std::vector<TailSample> out;
  for (double R : radii) {
    if (!(R > 0.0) || !(2.0 * R < g.half_width())) {
      throw InvalidParameter("tail_control: need 0 < 2R < L");
    }
    double initial = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (std::abs(g.x(j)) > R) initial += data[j];
    }
    initial *= g.dx();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      const double s = traj.times[i];
      double tail = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (std::abs(g.x(j)) > 2.0 * R) tail += traj.fields[i][j];
      }
      const double shape =
          s * std::pow(lambda, q - beta) / std::pow(R, beta) + std::pow(s, 1.0 / q) / R;
      out.push_back({s, R, tail * g.dx(), initial, shape});
    }
  }
  return out;
}

double calibrate_tail_constant(const std::vector<TailSample>& samples) {
  double c = 0.0;
  for (const auto& s : samples) c = std::max(c, (s.measured - s.initial) / s.shape);
  return c;
}

TailControl tail_control(const std::vector<TailSample>& samples, double constant) {
  TailControl out{samples, constant, -std::numeric_limits<double>::infinity(), true};
  for (const auto& s : samples) {
    const double margin = s.measured - (s.initial + constant * s.shape);
    out.worst_margin = std::max(out.worst_margin, margin);
  }
  out.passed = out.worst_margin <= 0.0;
  return out;
}

double asymptotic_distance(const Field& u, double t, double p, const NWaveParams& params) {
  const double m = integrate(u);
  if (std::abs(m - params.mass) > 1e-6) {
    throw InvalidParameter("asymptotic_distance: field mass " + std::to_string(m) +
                           " differs from M = " + std::to_string(params.mass));
  }
  const Field U = nwave_cell_averages(t, u.grid, params);
  Field diff = u;
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= U[j];
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::pow(t, (1.0 - inv_p) / params.q) * lp_norm(diff, p);
}

double nonlocal_entropy_term(const Trajectory& traj, double k, const TestFunction& phi) {
  std::vector<double> times{0.0};
  std::vector<Field> fields{traj.initial};
  times.insert(times.end(), traj.times.begin(), traj.times.end());
  fields.insert(fields.end(), traj.fields.begin(), traj.fields.end());
  const auto r = entropy_residual(times, fields, traj.config.q, k, phi, true, &traj.config.spec,
                                  traj.config.diffusion_scale);
  return r.nonlocal;
}

DerivativeExponents derivative_exponents(const std::vector<DiagnosticsRecord>& records, double q) {
  std::vector<double> t, s, l;
  for (const auto& r : records) {
    t.push_back(r.t);
    s.push_back(r.max_slope);
    l.push_back(r.dx_l1_local);
  }
  return {loglog_slope(t, s), loglog_slope(t, l), -2.0 / q};
}

}  // namespace fraclaw
