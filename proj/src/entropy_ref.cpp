#include "fraclaw/entropy_ref.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

#include "fraclaw/errors.hpp"
#include "fraclaw/solver.hpp"

namespace fraclaw {

void NWaveParams::validate() const {
  if (!(mass > 0.0)) throw InvalidParameter("N-wave mass M > 0 violated");
  if (!(q > 1.0)) throw InvalidParameter("N-wave exponent q > 1 violated");
}

namespace {

void require_time(double t) {
  if (!(t > 0.0)) throw InvalidParameter("N-wave is defined for t > 0 only");
}

// int_0^x U(t, y) dy for 0 <= x <= r(t).
double nwave_primitive(double t, double x, const NWaveParams& p) {
  if (x <= 0.0) return 0.0;
  const double r = nwave_front(t, p);
  if (x >= r) return p.mass;
  const double e = p.q / (p.q - 1.0);
  return std::pow(t, -1.0 / (p.q - 1.0)) * std::pow(x, e) / e;
}

}  // namespace

double nwave_front(double t, const NWaveParams& p) {
  p.validate();
  require_time(t);
  return std::pow(p.q * p.mass / (p.q - 1.0), (p.q - 1.0) / p.q) * std::pow(t, 1.0 / p.q);
}

double nwave_value(double t, double x, const NWaveParams& p) {
  const double r = nwave_front(t, p);
  if (x <= 0.0 || x >= r) return 0.0;
  return std::pow(x / t, 1.0 / (p.q - 1.0));
}

double nwave_max(double t, const NWaveParams& p) {
  p.validate();
  require_time(t);
  return std::pow(p.q * p.mass / (p.q - 1.0), 1.0 / p.q) * std::pow(t, -1.0 / p.q);
}

Field nwave_samples(double t, const Grid& grid, const NWaveParams& p) {
  return Field::sample(grid, [&](double x) { return nwave_value(t, x, p); });
}

Field nwave_cell_averages(double t, const Grid& grid, const NWaveParams& p) {
  const double h = grid.dx() / 2.0;
  return Field::sample(grid, [&](double x) {
    return (nwave_primitive(t, x + h, p) - nwave_primitive(t, x - h, p)) / grid.dx();
  });
}

double nwave_lp_norm(double t, double p, const NWaveParams& params) {
  if (!(p >= 1.0)) throw InvalidParameter("nwave_lp_norm: p >= 1 violated");
  const double r = nwave_front(t, params);
  const double a = 1.0 / (params.q - 1.0);
  if (std::isinf(p)) return std::pow(r / t, a);
  // int_0^r (x/t)^(a p) dx = t^(-a p) r^(a p + 1) / (a p + 1)
  const double e = a * p;
  return std::pow(std::pow(t, -e) * std::pow(r, e + 1.0) / (e + 1.0), 1.0 / p);
}

// ---------------------------------------------------------------------------

double Bump::value(double x) const {
  const double s = (x - center) / half_width;
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double Bump::derivative(double x) const {
  const double s = (x - center) / half_width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double d = 1.0 - s * s;
  return std::exp(1.0 - 1.0 / d) * (-2.0 * s / (d * d)) / half_width;
}

ExactSolution nwave_solution(const NWaveParams& p) {
  p.validate();
  ExactSolution s;
  s.value = [p](double t, double x) { return nwave_value(t, x, p); };
  s.breakpoints = [p](double t) { return std::vector<double>{0.0, nwave_front(t, p)}; };
  s.level = [p](double t, double k) {
    std::vector<double> out;
    if (k > 0.0) {
      const double x = t * std::pow(k, p.q - 1.0);
      if (x < nwave_front(t, p)) out.push_back(x);
    }
    return out;
  };
  return s;
}

ExactSolution shock_solution(double u_left, double u_right, double q, double x0) {
  if (u_left == u_right) throw InvalidParameter("shock_solution needs distinct states");
  const double speed = (flux(u_right, q) - flux(u_left, q)) / (u_right - u_left);
  ExactSolution s;
  s.value = [=](double t, double x) { return x < x0 + speed * t ? u_left : u_right; };
  s.breakpoints = [=](double t) { return std::vector<double>{x0 + speed * t}; };
  s.level = [](double, double) { return std::vector<double>{}; };
  return s;
}

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;
constexpr int kTimePanels = 32;
constexpr int kSpacePanels = 8;

// Integral over [a, b] split into equal panels.
template <class F>
double panels(F&& f, double a, double b, int count) {
  double acc = 0.0;
  const double h = (b - a) / count;
  for (int i = 0; i < count; ++i) acc += Gauss::integrate(f, a + i * h, a + (i + 1) * h);
  return acc;
}

// Space-time integral of g(t, x) over the support of phi, splitting x at the
// solution's breakpoints and level crossings.
template <class G>
double space_time(const ExactSolution& u, double k, const TestFunction& phi, G&& g) {
  if (!(phi.time.lower() > 0.0)) {
    throw SupportEscapes("test function must be supported in t > 0");
  }
  auto inner = [&](double t) {
    std::vector<double> cuts{phi.space.lower(), phi.space.upper()};
    auto add = [&](const std::vector<double>& xs) {
      for (double x : xs) {
        if (x > phi.space.lower() && x < phi.space.upper()) cuts.push_back(x);
      }
    };
    add(u.breakpoints(t));
    if (u.level) add(u.level(t, k));
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] > cuts[i]) {
        acc += panels([&](double x) { return g(t, x); }, cuts[i], cuts[i + 1], kSpacePanels);
      }
    }
    return acc;
  };
  return panels(inner, phi.time.lower(), phi.time.upper(), kTimePanels);
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

EntropyResidual entropy_residual(const ExactSolution& u, double q, double k,
                                 const TestFunction& phi) {
  const double fk = flux(k, q);
  auto production = [&](double t, double x) {
    const double v = u.value(t, x);
    return std::abs(v - k) * phi.time.derivative(t) * phi.space.value(x) +
           sgn(v - k) * (flux(v, q) - fk) * phi.time.value(t) * phi.space.derivative(x);
  };
  auto magnitude = [&](double t, double x) {
    const double v = u.value(t, x);
    return std::abs(v - k) * std::abs(phi.time.derivative(t) * phi.space.value(x)) +
           std::abs(flux(v, q) - fk) * std::abs(phi.time.value(t) * phi.space.derivative(x));
  };
  return {space_time(u, k, phi, production), space_time(u, k, phi, magnitude), 0.0};
}

double weak_form_residual(const ExactSolution& u, double q, const TestFunction& phi) {
  auto integrand = [&](double t, double x) {
    const double v = u.value(t, x);
    return v * phi.time.derivative(t) * phi.space.value(x) +
           flux(v, q) * phi.time.value(t) * phi.space.derivative(x);
  };
  return space_time(u, 0.0, phi, integrand);
}

EntropyResidual entropy_residual(const std::vector<double>& times,
                                 const std::vector<Field>& fields, double q, double k,
                                 const TestFunction& phi, bool viscous,
                                 const FractionalOperatorSpec* spec, double diffusion_scale) {
  if (times.size() != fields.size() || times.size() < 3) {
    throw InsufficientData("entropy_residual: need at least three snapshots");
  }
  const Grid& grid = fields.front().grid;
  if (phi.time.lower() < times.front() || phi.time.upper() > times.back() ||
      !(phi.time.lower() > 0.0)) {
    throw SupportEscapes("entropy_residual: time support leaves the snapshot range");
  }
  const double edge = grid.half_width() - grid.dx();
  if (phi.space.lower() < -edge || phi.space.upper() > edge) {
    throw SupportEscapes("entropy_residual: space support leaves the box");
  }
  if (viscous && spec == nullptr) {
    throw InvalidParameter("entropy_residual: viscous form needs the operator");
  }

  const Field space = Field::sample(grid, [&](double x) { return phi.space.value(x); });
  const Field space_dx = Field::sample(grid, [&](double x) { return phi.space.derivative(x); });
  std::vector<double> adjoint_space;
  if (viscous) {
    // Adjoint of the generator: conjugate symbol.
    auto sym = make_symbol(*spec, grid);
    for (auto& v : sym.values) v = std::conj(v);
    adjoint_space = apply_spectral(sym, space).values;
  }

  const double fk = flux(k, q);
  const double dx = grid.dx();
  const std::size_t n = grid.size();
  std::vector<double> prod(times.size()), mag(times.size()), nonlocal(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double a = phi.time.value(t);
    const double b = phi.time.derivative(t);
    if (a == 0.0 && b == 0.0) continue;
    require_same_grid(fields[i].grid, grid, "entropy_residual");
    double p = 0.0, m = 0.0, nl = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = fields[i][j];
      const double e = std::abs(v - k);
      const double fl = sgn(v - k) * (flux(v, q) - fk);
      p += e * b * space[j] + fl * a * space_dx[j];
      m += e * std::abs(b * space[j]) + std::abs(fl * a * space_dx[j]);
      if (viscous) {
        const double w = diffusion_scale * e * a * adjoint_space[j];
        nl += w;
        m += std::abs(w);
      }
    }
    prod[i] = p * dx;
    mag[i] = m * dx;
    nonlocal[i] = nl * dx;
  }
  auto trapezoid = [&](const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
      acc += 0.5 * (times[i + 1] - times[i]) * (y[i] + y[i + 1]);
    }
    return acc;
  };
  const double nl_total = trapezoid(nonlocal);
  return {trapezoid(prod) + nl_total, trapezoid(mag), nl_total};
}

// ---------------------------------------------------------------------------

double InitialTrace::gap() const { return std::abs(limit - target); }

InitialTrace initial_trace(const std::vector<double>& times, const std::vector<Field>& fields,
                           const std::function<double(double)>& psi, double mass) {
  if (times.size() != fields.size() || times.empty()) {
    throw InsufficientData("initial_trace: need matching times and fields");
  }
  InitialTrace out{times, {}, 0.0, mass * psi(0.0)};
  for (const auto& f : fields) {
    const Field w = Field::sample(f.grid, psi);
    out.values.push_back(inner(f, w));
  }
  out.limit = out.values.back();
  if (out.values.size() >= 3) {
    const std::size_t m = out.values.size();
    const double a0 = out.values[m - 3], a1 = out.values[m - 2], a2 = out.values[m - 1];
    const double denom = (a2 - a1) - (a1 - a0);
    if (std::abs(denom) > 1e-14 * std::max(1.0, std::abs(a2))) {
      out.limit = a2 - (a2 - a1) * (a2 - a1) / denom;
    }
  }
  return out;
}

}  // namespace fraclaw
