#include "fraclaw/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "fraclaw/entropy_ref.hpp"
#include "fraclaw/errors.hpp"
#include "fraclaw/kernel.hpp"
#include "fraclaw/verification.hpp"

namespace fraclaw {

namespace fs = std::filesystem;

std::string to_string(Command c) {
  switch (c) {
    case Command::kernel: return "kernel";
    case Command::solve: return "solve";
    case Command::rescale: return "rescale";
    case Command::verify: return "verify";
    case Command::sweep: return "sweep";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::kernel, Command::solve, Command::rescale, Command::verify,
                    Command::sweep}) {
    if (to_string(c) == s) return c;
  }
  throw InvalidParameter("unknown command '" + s + "'");
}

std::string format_check(const CheckLine& c) {
  std::ostringstream out;
  out << (c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL")) << "  " << c.name
      << "  measured=" << format_number(c.measured) << "  bound=" << format_number(c.bound);
  return out.str();
}

RunOptions load_options(const RunManifest& m) {
  std::map<std::string, std::string> entries;
  if (!m.config_path.empty()) {
    std::ifstream in(m.config_path);
    if (!in) throw InvalidParameter("cannot read config " + m.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    entries = parse_entries(text.str());
  }
  apply_env_overrides(entries, [](const char* name) { return std::getenv(name); });
  return build_options(entries);
}

namespace {

struct Report {
  std::vector<CheckLine> checks;
  std::vector<std::string> notes;
  // gnuplot plot commands, one per figure
  std::vector<std::string> plots;

  void check(std::string name, bool passed, double measured, double bound) {
    checks.push_back({std::move(name), passed, measured, bound, false});
  }
  void info(std::string name, double measured, double reference) {
    checks.push_back({std::move(name), true, measured, reference, true});
  }
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckLine& c) { return c.informational || c.passed; });
  }
};

std::string lambda_tag(double lambda) {
  std::ostringstream out;
  out << lambda;
  return out.str();
}

std::vector<double> merge_times(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double t : a) {
    if (out.empty() || t - out.back() > 1e-9 * std::max(1.0, t)) out.push_back(t);
  }
  return out;
}

std::vector<std::vector<double>> diagnostics_rows(const std::vector<DiagnosticsRecord>& recs) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : recs) {
    rows.push_back({r.t, r.mass, r.l1, r.l2, r.linf, r.oleinik_sup, r.max_value, r.max_slope,
                    r.dx_l1_local, r.energy_density, r.tail_mass});
  }
  return rows;
}

void write_profiles(const std::string& path, const Trajectory& traj,
                    const std::vector<double>& times) {
  std::vector<std::string> header{"x"};
  for (double t : times) header.push_back("u_t" + lambda_tag(t));
  std::vector<std::vector<double>> rows;
  const Grid& g = traj.config.grid;
  for (std::size_t j = 0; j < g.size(); ++j) {
    std::vector<double> row{g.x(j)};
    for (double t : times) row.push_back(traj.at(t)[j]);
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

// --- kernel -----------------------------------------------------------------

void run_kernel(const RunOptions& o, const fs::path& out, Report& rep) {
  const auto& spec = o.solver.spec;
  const Grid& g = o.solver.grid;
  const auto k = kernel_field(1.0, spec, g);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < g.size(); ++j) rows.push_back({g.x(j), k.field[j]});
  write_csv((out / "kernel.csv").string(), {"x", "K"}, rows);
  rep.check("kernel unit mass", std::abs(integrate(k.field) - 1.0) <= 1e-12,
            integrate(k.field), 1.0);

  struct Case {
    double p, theta;
    int j;
  };
  const Case cases[] = {{std::numeric_limits<double>::infinity(), 0.0, 0},
                        {2.0, 0.5, 0},
                        {2.0, 0.5, 1},
                        {1.0, 0.0, 1}};
  std::vector<std::vector<double>> fits;
  for (const auto& c : cases) {
    const auto fit = time_decay_exponent(c.p, c.theta, c.j == 1, spec, g);
    fits.push_back({c.p, c.theta, static_cast<double>(c.j), fit.slope, fit.expected});
    std::ostringstream name;
    name << "kernel time decay p=" << c.p << " theta=" << c.theta << " j=" << c.j;
    rep.check(name.str(), std::abs(fit.slope - fit.expected) <= 0.02, fit.slope, fit.expected);
  }
  write_csv((out / "kernel_decay.csv").string(), {"p", "theta", "j", "slope", "expected"}, fits);
  rep.plots.push_back("set logscale y; plot 'kernel.csv' using 1:2 with lines title 'K(1,x)'");
}

// --- solve ------------------------------------------------------------------

Trajectory reference_run(const RunOptions& o, const std::vector<double>& times,
                         double epsilon = 0.0) {
  SolverConfig c = o.solver;
  c.epsilon = epsilon;
  return solve(o.initial.sample(c.grid), c, times);
}

void invariant_checks(const Trajectory& traj, Report& rep) {
  const double mass0 = traj.initial_mass;
  double drift = 0.0, l1_growth = 0.0, below = 0.0, above = 0.0;
  const double top = traj.initial.max();
  const double bottom = traj.initial.min();
  double previous_l1 = lp_norm(traj.initial, 1.0);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Field& u = traj.fields[i];
    drift = std::max(drift, std::abs(integrate(u) - mass0) / mass0);
    above = std::max(above, u.max() - top);
    below = std::max(below, bottom - u.min());
    const double l1 = lp_norm(u, 1.0);
    l1_growth = std::max(l1_growth, l1 - previous_l1);
    previous_l1 = l1;
  }
  const double scale = linf_norm(traj.initial);
  rep.check("mass conservation (relative drift)", drift <= 1e-8, drift, 1e-8);
  rep.check("maximum principle (excess over initial range)",
            std::max(above, below) <= 1e-6 * scale, std::max(above, below), 1e-6 * scale);
  rep.check("L1 non-expansion (largest increase)", l1_growth <= 1e-10, l1_growth, 1e-10);
}

void run_solve(const RunOptions& o, const fs::path& out, Report& rep) {
  const auto traj = reference_run(o, o.snapshot_times, o.solver.epsilon);
  const auto recs = diagnose(traj, o.snapshot_times, o.radius);
  write_csv((out / "diagnostics.csv").string(), diagnostics_columns(), diagnostics_rows(recs));
  write_profiles((out / "profiles.csv").string(), traj, o.snapshot_times);
  invariant_checks(traj, rep);
  std::string cmd = "plot";
  for (std::size_t i = 0; i < o.snapshot_times.size(); ++i) {
    cmd += (i ? ", " : " ") + std::string("'profiles.csv' using 1:") + std::to_string(i + 2) +
           " with lines title 't=" + lambda_tag(o.snapshot_times[i]) + "'";
  }
  rep.plots.push_back(cmd);
}

// --- rescale ------------------------------------------------------------------

struct RescaledResult {
  double lambda;
  Trajectory traj;
  double d1, d2;
};

RescaledResult rescaled_member(const RunOptions& o, double lambda,
                               const std::vector<double>& times) {
  auto traj = solve_rescaled(o.initial, o.solver, lambda, times);
  const NWaveParams params{o.initial.mass, o.solver.q};
  const Field& last = traj.fields.back();
  const double s = traj.times.back();
  return {lambda, std::move(traj), asymptotic_distance(last, s, 1.0, params),
          asymptotic_distance(last, s, 2.0, params)};
}

std::vector<RescaledResult> rescaled_family(const RunOptions& o, const std::vector<double>& times,
                                            unsigned workers) {
  const std::size_t m = o.lambda_list.size();
  std::vector<std::optional<RescaledResult>> slots(m);
  std::vector<std::exception_ptr> errors(m);
  std::size_t next = 0;
  std::mutex lock;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> g(lock);
        if (next == m) return;
        i = next++;
      }
      try {
        slots[i] = rescaled_member(o, o.lambda_list[i], times);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(m)));
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::vector<RescaledResult> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

void distance_outputs(const std::vector<RescaledResult>& family,
                      const fs::path& out, Report& rep) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : family) {
    rows.push_back({r.lambda, r.d1, r.d2});
    rep.info("d1 of rescaled solution at s=1, lambda=" + lambda_tag(r.lambda), r.d1, 0.0);
  }
  write_csv((out / "distance.csv").string(), {"lambda", "d1", "d2"}, rows);
  rep.plots.push_back(
      "set logscale xy; plot 'distance.csv' using 1:2 with linespoints title 'd1', "
      "'distance.csv' using 1:3 with linespoints title 'd2'");
}

void run_rescale(const RunOptions& o, const fs::path& out, unsigned workers, Report& rep) {
  const auto family = rescaled_family(o, {1.0}, workers);
  const NWaveParams params{o.initial.mass, o.solver.q};
  const Grid& g = o.solver.grid;
  const Field nwave = nwave_cell_averages(1.0, g, params);
  std::vector<std::string> header{"y"};
  for (const auto& r : family) header.push_back("u_lambda" + lambda_tag(r.lambda));
  header.push_back("nwave");
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < g.size(); ++j) {
    std::vector<double> row{g.x(j)};
    for (const auto& r : family) row.push_back(r.traj.fields.back()[j]);
    row.push_back(nwave[j]);
    rows.push_back(std::move(row));
  }
  write_csv((out / "rescaled.csv").string(), header, rows);
  for (const auto& r : family) {
    const double drift = std::abs(integrate(r.traj.fields.back()) - o.initial.mass);
    rep.check("mass of rescaled solution, lambda=" + lambda_tag(r.lambda), drift <= 1e-8, drift,
              1e-8);
  }
  distance_outputs(family, out, rep);
}

// --- sweep --------------------------------------------------------------------

void run_sweep(const RunOptions& o, const fs::path& out, unsigned workers, Report& rep) {
  const std::vector<double> times{0.25, 0.5, 0.75, 1.0};
  const auto family = rescaled_family(o, times, workers);
  std::vector<std::vector<double>> tails;
  for (const auto& r : family) {
    const auto recs = diagnose(r.traj, times, o.radius);
    write_csv((out / ("diagnostics_lambda" + lambda_tag(r.lambda) + ".csv")).string(),
              diagnostics_columns(), diagnostics_rows(recs));
    for (const auto& s : tail_samples(r.traj, o.initial, r.lambda, o.tail_radii)) {
      tails.push_back({r.lambda, s.s, s.R, s.measured, s.initial, s.shape});
    }
  }
  write_csv((out / "tails.csv").string(), {"lambda", "s", "R", "measured", "initial", "shape"},
            tails);
  distance_outputs(family, out, rep);
}

// --- verify -------------------------------------------------------------------

void run_verify(const RunOptions& o, const fs::path& out, std::uint64_t seed, Report& rep,
                std::ostream& log) {
  const double t_last = o.snapshot_times.back();
  const double t_first = o.snapshot_times.front();
  const auto dense = merge_times(uniform_snapshots(o.solver.dt, t_last, 50), o.snapshot_times);
  log << "reference run: " << dense.size() << " snapshots up to t=" << t_last << "\n";
  const auto traj = reference_run(o, dense, 0.0);
  const double M = o.initial.mass;
  const double q = o.solver.q;

  const auto recs = diagnose(traj, o.snapshot_times, o.radius);
  write_csv((out / "diagnostics.csv").string(), diagnostics_columns(), diagnostics_rows(recs));
  write_profiles((out / "profiles.csv").string(), traj, o.snapshot_times);

  // (i), (ii): mass, sign and L1
  invariant_checks(traj, rep);
  double min_value = std::numeric_limits<double>::infinity();
  for (const auto& f : traj.fields) min_value = std::min(min_value, f.min());
  rep.check("nonnegativity (most negative value)", min_value >= -1e-6 * traj.initial.max(),
            min_value, -1e-6 * traj.initial.max());

  // (iii): sup bound for t >= 1
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    if (r.t < 1.0) continue;
    worst = std::max(worst, r.max_value / nwave_max(r.t, {M, q}));
  }
  rep.check("sup bound (qM/(q-1))^(1/q) t^(-1/q), worst ratio", worst <= 1.0, worst, 1.0);

  // (iv): L^p bounds and rates
  std::vector<std::vector<double>> decay_rows;
  if (t_last >= 10.0 * t_first) {
    SolverConfig c = traj.config;
    Trajectory coarse{c, traj.initial, {}, {}, traj.initial_mass};
    for (double t : o.snapshot_times) {
      coarse.times.push_back(t);
      coarse.fields.push_back(traj.at(t));
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& d : decay_exponents(coarse, {1.0, 2.0, inf}, M)) {
      double ratio = 0.0;
      for (std::size_t i = 0; i < d.norms.size(); ++i) {
        ratio = std::max(ratio, d.norms[i] / d.bounds[i]);
        decay_rows.push_back({d.p, coarse.times[i], d.norms[i], d.bounds[i]});
      }
      const std::string p = std::isinf(d.p) ? "inf" : lambda_tag(d.p);
      rep.check("L" + p + " bound, worst norm/bound", d.bound_holds, ratio, 1.0);
      rep.check("L" + p + " decay rate, late slope >= bound slope - 0.05", d.rate_holds,
                d.fitted_slope, d.bound_slope - 0.05);
    }
    write_csv((out / "decay.csv").string(), {"p", "t", "norm", "bound"}, decay_rows);
  } else {
    rep.notes.push_back("L^p decay checks skipped: snapshot_times span less than a decade");
  }

  // (v), (vi): derivative exponents, constants unspecified
  const auto ex = derivative_exponents(recs, q);
  rep.info("sup du/dx time exponent", ex.sup_slope, ex.sup_expected);
  rep.info("local L1 norm of du/dx time exponent", ex.local_slope, 0.0);

  // (vii): energy budget
  const auto budget = energy_budget(traj, t_first, t_last, M);
  rep.check("energy budget on [" + lambda_tag(t_first) + ", " + lambda_tag(t_last) + "]",
            budget.passed(), budget.lhs, budget.rhs);

  // Oleinik on the shifted run
  const double eps = o.solver.epsilon > 0.0 ? o.solver.epsilon : 1e-2 * traj.initial.max();
  log << "shifted run: epsilon=" << eps << "\n";
  const auto shifted = reference_run(o, dense, eps);
  const auto ol = oleinik_check(shifted, std::max(1.0, t_first));
  std::vector<std::vector<double>> ol_rows;
  for (std::size_t i = 0; i < ol.times.size(); ++i) ol_rows.push_back({ol.times[i], ol.ratios[i]});
  write_csv((out / "oleinik.csv").string(), {"t", "t_sup_dx_u_pow"}, ol_rows);
  rep.check("Oleinik t sup d/dx u^(q-1)", ol.passed, ol.worst, 1.01);

  // viscous entropy inequality with seeded test functions
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tc(0.25 * t_last, 0.6 * t_last);
  std::uniform_real_distribution<double> tw(0.0625 * t_last, 0.2 * t_last);
  std::uniform_real_distribution<double> xc(-5.0, 10.0), xw(1.0, 4.0);
  std::vector<double> times{0.0};
  std::vector<Field> fields{traj.initial};
  times.insert(times.end(), traj.times.begin(), traj.times.end());
  fields.insert(fields.end(), traj.fields.begin(), traj.fields.end());
  double worst_entropy = std::numeric_limits<double>::infinity();
  for (double k : {0.0, 0.05, 0.1, 0.2}) {
    for (int b = 0; b < 5; ++b) {
      TestFunction phi{{tc(rng), tw(rng)}, {xc(rng), xw(rng)}};
      phi.time.half_width = std::min(phi.time.half_width, phi.time.center - 1e-3);
      const auto r = entropy_residual(times, fields, q, k, phi, true, &traj.config.spec,
                                      traj.config.diffusion_scale);
      worst_entropy = std::min(worst_entropy, r.value / r.scale);
    }
  }
  rep.check("viscous entropy inequality, worst relative residual", worst_entropy >= -1e-4,
            worst_entropy, -1e-4);

  // distance to the N-wave, informational
  const NWaveParams params{M, q};
  std::vector<std::vector<double>> dist;
  for (double t : o.snapshot_times) {
    dist.push_back({t, asymptotic_distance(traj.at(t), t, 1.0, params),
                    asymptotic_distance(traj.at(t), t, 2.0, params)});
  }
  write_csv((out / "nwave_distance.csv").string(), {"t", "d1", "d2"}, dist);
  rep.info("d1(t_last) / d1(t_first)", dist.back()[1] / dist.front()[1], 0.5);

  rep.plots.push_back(
      "set logscale xy; plot 'nwave_distance.csv' using 1:2 with linespoints title 'd1', "
      "'nwave_distance.csv' using 1:3 with linespoints title 'd2'");
  rep.plots.push_back(
      "unset logscale; plot 'oleinik.csv' using 1:2 with lines title 't sup d/dx u^(q-1)', "
      "1 title 'bound'");
}

void write_report(const fs::path& out, const Report& rep, const RunOptions& o) {
  std::ofstream summary(out / "summary.txt");
  for (const auto& w : o.warnings) summary << "NOTE  " << w << "\n";
  for (const auto& c : rep.checks) summary << format_check(c) << "\n";
  for (const auto& n : rep.notes) summary << "NOTE  " << n << "\n";
  std::ofstream plot(out / "plot.gp");
  plot << "set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo\n";
  for (std::size_t i = 0; i < rep.plots.size(); ++i) {
    plot << "set output 'figure" << i << ".png'\n" << rep.plots[i] << "\n";
  }
}

}  // namespace

int run(const RunManifest& m, std::ostream& log) {
  RunOptions options;
  try {
    options = load_options(m);
  } catch (const std::exception& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& w : options.warnings) log << "note: " << w << "\n";
  if (m.check_only) {
    log << format_config(options);
    return 0;
  }

  const fs::path out(m.out_dir);
  fs::create_directories(out);
  Report rep;
  int status = 0;
  try {
    switch (m.command) {
      case Command::kernel: run_kernel(options, out, rep); break;
      case Command::solve: run_solve(options, out, rep); break;
      case Command::rescale: run_rescale(options, out, m.workers, rep); break;
      case Command::sweep: run_sweep(options, out, m.workers, rep); break;
      case Command::verify: run_verify(options, out, m.seed, rep, log); break;
    }
    status = rep.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    rep.notes.push_back("partial results: computation stopped with: " + std::string(e.what()));
    log << "error: " << e.what() << "\n";
    status = 2;
  }
  write_report(out, rep, options);
  {
    std::ofstream cfg(out / "resolved.cfg");
    cfg << format_config(options);
  }
  for (const auto& c : rep.checks) log << format_check(c) << "\n";
  return status;
}

}  // namespace fraclaw
