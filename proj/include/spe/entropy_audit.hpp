#pragma once

#include <functional>
#include <vector>

#include "spe/evolve.hpp"

namespace spe {

/// Kruzkov flux q(u) = -sgn(u - c)(u^3 - c^3)/6 with sgn(0) = 0.
double kruzkov_flux(double u, double c);

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// eta(u) = (u - k)^2 with the matched flux q' = -(u^2/2) eta'.
struct QuadraticEntropy {
  double k = 0.0;

  double eta(double u) const { return (u - k) * (u - k); }
  double d_eta(double u) const { return 2.0 * (u - k); }
  double flux(double u) const;
};

struct EntropyResidual {
  double max_positive_part = 0.0;
  double min_value = 0.0;
  /// residual[n][i]: step n -> n+1, cell i. Boundary cells are left at 0.
  std::vector<std::vector<double>> field;
};

/// Cell-strong Kruzkov residual
///   R = (|u^{n+1} - c| - |u^n - c|)/dt + (q(u_{i+1}) - q(u_i))/dx - gamma sgn(u_i - c) P_i
/// with flux and source terms averaged over u^n and the RK stage. For a monotone stage and
/// gamma = 0 this is <= 0 up to rounding. Needs one snapshot per step (and the recorded stages).
EntropyResidual interior_entropy_residual(const Trajectory& traj, double c);

/// Worst positive residual over a set of Kruzkov constants.
double max_positive_residual(const Trajectory& traj, const std::vector<double>& constants);

/// Default Kruzkov constants: 17 points spanning [-||u||_inf, ||u||_inf] over the trajectory.
std::vector<double> default_kruzkov_constants(const Trajectory& traj, int count = 17);

/// Sum over space-time cells of R * phi(t_mid, x_i) * dx * dt for a nonnegative weight phi.
double weighted_entropy_residual(const Trajectory& traj, double c, const std::function<double(double, double)>& phi);

/// Sign of the eta'(0) term in the boundary condition.
///  FluxConsistent: q(w) - q(0) - eta'(0) (f(w) - f(0)) with f(w) = -w^3/6, i.e. + eta'(0) w^3/6.
///    Equals the integral of (eta'(s) - eta'(0)) f'(s) over (0, w), so it is <= 0 for any trace.
///  AsWritten: q(w) - q(0) - eta'(0) w^3/6.
enum class BoundaryForm { FluxConsistent, AsWritten };

/// max over recorded times and entropies of the boundary left side.
/// Half-line only; the trace is the first-cell value recorded by run().
double boundary_trace_check(const Trajectory& traj, const std::vector<QuadraticEntropy>& entropies,
                            BoundaryForm form = BoundaryForm::FluxConsistent);

/// Same left side over an arbitrary trace series.
double boundary_condition_worst(const std::vector<double>& trace, const std::vector<QuadraticEntropy>& entropies,
                                BoundaryForm form = BoundaryForm::FluxConsistent);

/// Linear extrapolation of the first two cells to x = 0, one value per snapshot.
/// Comparison surrogate for the first-cell trace.
std::vector<double> extrapolated_trace(const Trajectory& traj);

}  // namespace spe
