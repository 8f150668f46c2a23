#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spe/bounds_audit.hpp"
#include "spe/config.hpp"
#include "spe/grid_field.hpp"

namespace spe {

/// Exact Godunov flux for f(u) = -u^3/6. Since f'(u) = -u^2/2 <= 0 everywhere the
/// Riemann fan never crosses to the right, so the interface flux is f(right state).
inline double godunov_flux(double /*left*/, double right) { return -right * right * right / 6.0; }

inline double cubic_flux(double u) { return -u * u * u / 6.0; }

/// dt = cfl * min(dx / max(u^2/2 + 1e-12), dx^2 / (2 eps)); the diffusive limit only for eps > 0.
double cfl_dt(const Field& u, double epsilon, double dx, double cfl);

/// Nonlocal source for the current state: elliptic solve for eps > 0, primitive for eps = 0.
struct SourceTerm {
  Field p;
  double anchor_gap = 0.0;
};
SourceTerm nonlocal_term(const Field& u, const SolveConfig& config);

/// Semi-discrete right-hand side -(F_{i+1/2} - F_{i-1/2})/dx + gamma P_i + eps (D2 u)_i with zero ghosts.
std::vector<double> semi_discrete_rhs(const Field& u, const Field& p, const SolveConfig& config);

/// Thrown when a step produces a non-finite value.
class NumericalBlowup : public std::runtime_error {
public:
  NumericalBlowup(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step_index() const { return step_; }

private:
  long step_;
};

/// One two-stage SSP Runge-Kutta step; P is refreshed at each stage.
struct StepResult {
  Field u;
  Field stage;    // intermediate forward-Euler state
  Field p_start;  // source used by the first stage
  Field p_stage;  // source used by the second stage
};
StepResult step_detailed(const Field& u, const SolveConfig& config, double dt);
Field step(const Field& u, const SolveConfig& config, double dt);

struct Snapshot {
  double t;
  Field u;
  Field p;
};

struct Trajectory {
  SolveConfig config;
  std::vector<Snapshot> snapshots;
  std::vector<Snapshot> stages;                // RK intermediate state per step, kept when snapshot_every = 1
  std::vector<DiagnosticsRecord> diagnostics;  // one per step, including t = 0
  std::vector<double> trace_t;                 // half-line boundary trace (first-cell value)
  std::vector<double> trace_u;
  std::vector<double> step_dt;
  std::vector<std::string> warnings;
  long steps = 0;
};

/// Marches u0 to config.t_final. Snapshots every `snapshot_every` steps and at the final time;
/// diagnostics and boundary traces at every step.
Trajectory run(const SolveConfig& config, const Field& u0);

}  // namespace spe
