#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spe/config.hpp"
#include "spe/grid_field.hpp"

namespace spe {

struct Trajectory;

enum class CheckKind {
  Inequality,  // pass iff actual <= bound * (1 + tol)
  Identity     // pass iff actual <= tol * scale, actual = |lhs - rhs|
};
enum class CheckStatus { Pass, Fail, Skipped };

struct Check {
  std::string name;
  std::string estimate;  // which a-priori estimate the check encodes
  CheckKind kind = CheckKind::Inequality;
  double bound = 0.0;
  double actual = 0.0;
  double scale = 0.0;  // identities only
  double tol = 0.0;
  bool skipped = false;

  CheckStatus status() const { return status_at(tol); }
  CheckStatus status_at(double tolerance) const;
  /// actual / allowed; <= 1 means pass. 0 when both vanish.
  double usage(double tolerance) const;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double mass_identity_residual = 0.0;
  double u_l2 = 0.0;
  double u_linf = 0.0;
  double p_l2 = 0.0;
  double p_linf = 0.0;
  double dp_l2 = 0.0;
  double G = 0.0;  // ||P||^2 + eps^2 ||P_x||^2
  double p_mean = 0.0;
  double first_moment = 0.0;  // integral of x u
  double p_right = 0.0;       // integral of P over (0, x_max)
  double p_left = 0.0;        // integral of P over (x_min, 0); 0 on the half-line
  double dp_at0 = 0.0;        // P_x at x = 0
  double u_at0 = 0.0;
  double du_at0 = 0.0;
  double a_eps = std::numeric_limits<double>::quiet_NaN();         // cubic boundary term
  double a_eps_display = std::numeric_limits<double>::quiet_NaN();  // linear u(t,0)/6 variant
  double anchor_gap = 0.0;
  std::vector<Check> checks;

  bool all_pass() const;
  int evaluated_checks() const;
};

/// Stateful per-step evaluator: keeps the initial norms and the running time
/// integrals (trapezoid) that the growth estimates need. Must be fed every step
/// in order; a_eps uses a first-order backward difference of P_x(t,0).
class BoundsAuditor {
public:
  BoundsAuditor(const SolveConfig& config, const Field& u0);

  DiagnosticsRecord audit_step(const Field& u, const Field& p, double anchor_gap);

  double u0_l2() const { return u0_l2_; }
  double u0_linf() const { return u0_linf_; }

private:
  SolveConfig config_;
  double u0_l2_;
  double u0_linf_;
  bool started_ = false;
  double last_t_ = 0.0;
  double last_p_linf_ = 0.0;
  double last_dissipation_ = 0.0;  // e^{-2 gamma s} ||u_x(s)||^2
  double last_dp_at0_ = 0.0;       // for the backward difference of P_x(t,0)
  double p_linf_integral_ = 0.0;
  double dissipation_integral_ = 0.0;
};

/// ||u_x||^2 from face differences with zero ghost values.
double gradient_energy(const Field& u);

struct CheckSummary {
  std::string name;
  std::string estimate;
  int evaluated = 0;
  int failed = 0;
  double worst_usage = 0.0;  // max over steps of actual / allowed
  double worst_t = 0.0;
  double worst_actual = 0.0;
  double worst_bound = 0.0;
  double first_fail_t = std::numeric_limits<double>::quiet_NaN();
  bool skipped = true;
  bool pass() const { return failed == 0; }
};

/// Report-only probes of claims the audit measures without judging.
struct ProbeRow {
  double t;
  double p_integral;           // integral of P over the domain
  double minus_first_moment;   // -integral of x u
  double p_right;              // integral of P over (0, x_max)
  double p_left_negated;       // -integral of P over (x_min, 0)
  double a_eps;                // cubic version
  double a_eps_display;        // linear version
  double anchor_gap;
  double mass;
};

struct AuditSummary {
  std::vector<CheckSummary> checks;
  double sup_p_l2 = 0.0;  // empirical C(T) for the L2 bound on P
  double sup_p_linf = 0.0;
  double sup_u_linf = 0.0;
  double sup_abs_mass = 0.0;
  double final_mass = 0.0;
  int evaluated_per_step = 0;
  bool constant_check_count = true;
  std::vector<ProbeRow> probes;

  bool all_pass() const;
};

/// Aggregates the per-step records of a trajectory.
AuditSummary audit_trajectory(const Trajectory& traj);

}  // namespace spe
