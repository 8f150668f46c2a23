#include "spe/entropy_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spe {

double kruzkov_flux(double u, double c) { return -sign(u - c) * (u * u * u - c * c * c) / 6.0; }

double QuadraticEntropy::flux(double u) const {
  // -int_k^u xi^2 (xi - k) dxi
  return -((std::pow(u, 4) - std::pow(k, 4)) / 4.0 - k * (std::pow(u, 3) - std::pow(k, 3)) / 3.0);
}

namespace {

void require_every_step(const Trajectory& traj) {
  const auto steps = static_cast<std::size_t>(traj.steps);
  if (traj.config.snapshot_every != 1 || traj.snapshots.size() != steps + 1 || traj.stages.size() != steps)
    throw std::invalid_argument("entropy residual needs one snapshot per step (snapshot_every = 1)");
}

// Entropy flux divergence at cell i for the upwind numerical flux q_hat(a, b) = q(b), zero ghosts.
double flux_divergence(std::span<const double> u, int i, double c, double dx) {
  const int n = static_cast<int>(u.size());
  const double right = (i + 1 < n) ? u[i + 1] : 0.0;
  return (kruzkov_flux(right, c) - kruzkov_flux(u[i], c)) / dx;
}

template <class Visit>
void for_each_residual(const Trajectory& traj, double c, Visit visit) {
  require_every_step(traj);
  const double gamma = traj.config.gamma;
  for (std::size_t s = 0; s + 1 < traj.snapshots.size(); ++s) {
    const auto& a = traj.snapshots[s];
    const auto& m = traj.stages[s];
    const auto& b = traj.snapshots[s + 1];
    const double dt = b.t - a.t;
    const double dx = a.u.grid().dx();
    const int n = static_cast<int>(a.u.size());
    const auto ua = a.u.values();
    const auto um = m.u.values();
    const auto ub = b.u.values();
    for (int i = 1; i + 1 < n; ++i) {
      // Heun is the average of u^n and a forward-Euler step from the stage, so the matching
      // entropy flux and source are averages over u^n and the stage.
      const double time_part = (std::abs(ub[i] - c) - std::abs(ua[i] - c)) / dt;
      const double flux_part = 0.5 * (flux_divergence(ua, i, c, dx) + flux_divergence(um, i, c, dx));
      const double source = 0.5 * gamma * (sign(ua[i] - c) * a.p[i] + sign(um[i] - c) * m.p[i]);
      visit(s, i, 0.5 * (a.t + b.t), dt, dx, time_part + flux_part - source);
    }
  }
}

}  // namespace

EntropyResidual interior_entropy_residual(const Trajectory& traj, double c) {
  EntropyResidual out;
  require_every_step(traj);
  const std::size_t n = traj.snapshots.front().u.size();
  out.field.assign(traj.snapshots.size() - 1, std::vector<double>(n, 0.0));
  out.min_value = std::numeric_limits<double>::infinity();
  for_each_residual(traj, c, [&](std::size_t s, int i, double, double, double, double r) {
    out.field[s][static_cast<std::size_t>(i)] = r;
    out.max_positive_part = std::max(out.max_positive_part, r);
    out.min_value = std::min(out.min_value, r);
  });
  if (!std::isfinite(out.min_value)) out.min_value = 0.0;
  return out;
}

double max_positive_residual(const Trajectory& traj, const std::vector<double>& constants) {
  double worst = 0.0;
  for (double c : constants) {
    for_each_residual(traj, c, [&](std::size_t, int, double, double, double, double r) { worst = std::max(worst, r); });
  }
  return worst;
}

std::vector<double> default_kruzkov_constants(const Trajectory& traj, int count) {
  double m = 0.0;
  for (const auto& s : traj.snapshots) m = std::max(m, norm(s.u, NormKind::Linf));
  std::vector<double> cs(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) cs[j] = (count == 1) ? 0.0 : -m + 2.0 * m * j / (count - 1);
  return cs;
}

double weighted_entropy_residual(const Trajectory& traj, double c, const std::function<double(double, double)>& phi) {
  double sum = 0.0;
  const Grid& g = traj.snapshots.front().u.grid();
  for_each_residual(traj, c, [&](std::size_t, int i, double t, double dt, double dx, double r) {
    sum += r * phi(t, g.center(i)) * dx * dt;
  });
  return sum;
}

double boundary_trace_check(const Trajectory& traj, const std::vector<QuadraticEntropy>& entropies,
                            BoundaryForm form) {
  if (traj.config.kind != ProblemKind::Ibvp || traj.trace_u.empty())
    throw std::invalid_argument("boundary_trace_check: needs a half-line trajectory with a recorded trace");
  return boundary_condition_worst(traj.trace_u, entropies, form);
}

std::vector<double> extrapolated_trace(const Trajectory& traj) {
  if (traj.config.kind != ProblemKind::Ibvp) throw std::invalid_argument("extrapolated_trace: half-line only");
  std::vector<double> out;
  out.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) out.push_back(1.5 * s.u[0] - 0.5 * s.u[1]);
  return out;
}

double boundary_condition_worst(const std::vector<double>& trace, const std::vector<QuadraticEntropy>& entropies,
                                BoundaryForm form) {
  if (trace.empty() || entropies.empty()) throw std::invalid_argument("boundary_condition_worst: empty input");
  double worst = -std::numeric_limits<double>::infinity();
  for (double w : trace) {
    for (const auto& e : entropies) {
      const double sign = form == BoundaryForm::FluxConsistent ? 1.0 : -1.0;
      const double lhs = e.flux(w) - e.flux(0.0) + sign * e.d_eta(0.0) * w * w * w / 6.0;
      worst = std::max(worst, lhs);
    }
  }
  return worst;
}

}  // namespace spe
