#ifndef FRACLAW_VERIFICATION_HPP_
#define FRACLAW_VERIFICATION_HPP_

#include <string>
#include <vector>

#include "fraclaw/entropy_ref.hpp"
#include "fraclaw/solver.hpp"

namespace fraclaw {

/// Measurements on one snapshot. Norms, mass and tails refer to u - epsilon
/// for shifted runs; the Oleinik quantity uses the shifted field itself.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double oleinik_sup = 0.0;     // sup_x d/dx (u^(q-1))
  double max_value = 0.0;
  double max_slope = 0.0;       // sup_x du/dx
  double dx_l1_local = 0.0;     // int_{|x|<R} |du/dx|
  double energy_density = 0.0;  // int |D^{beta/2} u|^2
  double tail_mass = 0.0;       // int_{|x|>2R} u
};

/// Column names in the order written by write_diagnostics_csv.
std::vector<std::string> diagnostics_columns();

std::vector<DiagnosticsRecord> diagnose(const Trajectory& traj, const std::vector<double>& times,
                                        double R);
DiagnosticsRecord diagnose_field(const Field& u, double t, const SolverConfig& config, double R);

/// sup_x d/dx (u^(q-1)) with a dealiased spectral derivative.
double oleinik_sup(const Field& u, double q);
/// Same quantity with forward differences; exact on piecewise linear data.
double oleinik_sup_forward(const Field& u, double q);

struct OleinikResult {
  std::vector<double> times;
  std::vector<double> ratios;  // t * sup_x d/dx (u^(q-1))
  double worst = 0.0;
  bool passed = false;  // worst <= 1 + 1e-2
};

/// t * sup d/dx (u^(q-1)) over snapshots with t >= t0.
OleinikResult oleinik_check(const Trajectory& traj_epsilon, double t0 = 1.0);

struct DecayExponent {
  double p;
  std::vector<double> norms;
  std::vector<double> bounds;  // printed constant times t^(-(1/q)(1-1/p))
  double fitted_slope;         // over the last decade of snapshots
  double bound_slope;          // -(1/q)(1 - 1/p)
  bool bound_holds;
  bool rate_holds;  // fitted_slope >= bound_slope - 0.05
};

/// L^p decay against the upper bound. Needs snapshots spanning a decade.
std::vector<DecayExponent> decay_exponents(const Trajectory& traj, const std::vector<double>& p_list,
                                           double mass);

/// ((q/(q-1))^((p-1)/(pq))) M^((p-1)/(pq) + 1/p) t^(-(1/q)(1-1/p)).
double lp_decay_bound(double t, double p, double q, double mass);

struct EnergyBudget {
  double lhs;  // int_tau^T int |D^{beta/2} u|^2
  double rhs;  // (1/2) (q/(q-1))^(1/q) tau^(-1/q) M^((q+1)/q)
  bool passed() const { return lhs <= rhs * 1.01; }
};

EnergyBudget energy_budget(const Trajectory& traj, double tau, double T, double mass);

/// Rate of energy loss cos(gamma pi/2) sum |xi|^beta |u^|^2, scaled by the
/// run's diffusion factor.
double dissipation_rate(const Field& u, const SolverConfig& config);

struct EnergyIdentity {
  std::vector<double> times;
  std::vector<double> residuals;  // |d/dt (1/2)||u||^2 + dissipation| / dissipation
  double worst = 0.0;
};

/// Checks the energy identity at every snapshot whose two neighbours are
/// equally spaced, with a centred difference in time.
EnergyIdentity energy_identity(const Trajectory& traj);

struct TailSample {
  double s;
  double R;
  double measured;  // int_{|y|>2R} u
  double initial;   // int_{|y|>R} u0 of the unscaled data
  double shape;     // s lambda^(q-beta) / R^beta + s^(1/q) / R
};

/// Tail masses of a rescaled trajectory on the snapshot grid.
std::vector<TailSample> tail_samples(const Trajectory& traj_lambda, const InitialProfile& u0,
                                     double lambda, const std::vector<double>& radii);

/// Smallest C with measured <= initial + C shape on all samples.
double calibrate_tail_constant(const std::vector<TailSample>& samples);

struct TailControl {
  std::vector<TailSample> samples;
  double constant;
  double worst_margin;  // max(measured - bound), <= 0 when the bound holds
  bool passed;
};

TailControl tail_control(const std::vector<TailSample>& samples, double constant);

/// t^((1/q)(1-1/p)) ||u - U_M(t)||_p with U_M sampled as cell averages.
/// Throws InvalidParameter if the field's mass differs from M by more than 1e-6.
double asymptotic_distance(const Field& u, double t, double p, const NWaveParams& params);

/// lambda^(q-beta) int int d/dy D[|u - k|] phi over the stored snapshots.
double nonlocal_entropy_term(const Trajectory& traj_lambda, double k, const TestFunction& phi);

/// Informational exponents for the derivative estimates, whose constants are
/// not specified: slopes of sup du/dx and int_{|x|<R} |du/dx| against t.
struct DerivativeExponents {
  double sup_slope;
  double local_slope;
  double sup_expected;  // -2/q
};

DerivativeExponents derivative_exponents(const std::vector<DiagnosticsRecord>& records, double q);

}  // namespace fraclaw

#endif  // FRACLAW_VERIFICATION_HPP_
