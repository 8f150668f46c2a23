#include "spe/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spe/nonlocal_source.hpp"

namespace spe {

double cfl_dt(const Field& u, double epsilon, double dx, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl_dt: cfl must lie in (0, 1]");
  constexpr double guard = 1e-12;
  double speed = 0.0;
  for (double v : u.values()) speed = std::max(speed, 0.5 * v * v);
  double dt = dx / (speed + guard);
  if (epsilon > 0.0) dt = std::min(dt, dx * dx / (2.0 * epsilon));
  return cfl * dt;
}

SourceTerm nonlocal_term(const Field& u, const SolveConfig& config) {
  const Grid& g = u.grid();
  if (config.epsilon > 0.0) {
    auto sol = solve_elliptic(u, EllipticSetup{config.epsilon, g, config.normalization});
    return {std::move(sol.p), sol.anchor_gap};
  }
  // The epsilon -> 0 limit of the two-sided Dirichlet closure keeps the left-edge anchor.
  const bool from_left = g.kind() == BoundaryKind::WholeLine && config.normalization == Normalization::DecayBothEnds;
  return {primitive(u, from_left ? g.x_min() : 0.0), 0.0};
}

std::vector<double> semi_discrete_rhs(const Field& u, const Field& p, const SolveConfig& config) {
  require_same_grid(u, p);
  const Grid& g = u.grid();
  const int n = g.n_cells();
  const double dx = g.dx();
  const double diff = config.epsilon / (dx * dx);
  auto at = [&](int i) { return (i < 0 || i >= n) ? 0.0 : u[i]; };

  std::vector<double> du(g.size());
  double flux_left = godunov_flux(at(-1), at(0));
  for (int i = 0; i < n; ++i) {
    const double flux_right = godunov_flux(at(i), at(i + 1));
    du[i] = -(flux_right - flux_left) / dx + config.gamma * p[i];
    if (config.epsilon > 0.0) du[i] += diff * (at(i + 1) - 2.0 * at(i) + at(i - 1));
    flux_left = flux_right;
  }
  return du;
}

namespace {

struct EulerStage {
  Field u;
  Field p;
};

EulerStage euler_stage(const Field& u, const SolveConfig& config, double dt) {
  auto source = nonlocal_term(u, config);
  const auto du = semi_discrete_rhs(u, source.p, config);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[i] + dt * du[i];
  return {Field(u.grid(), std::move(out), u.time() + dt), std::move(source.p)};
}

}  // namespace

StepResult step_detailed(const Field& u, const SolveConfig& config, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step: dt must be positive and finite");
  EulerStage first = euler_stage(u, config, dt);
  EulerStage second = euler_stage(first.u, config, dt);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (u[i] + second.u[i]);
  return {Field(u.grid(), std::move(out), u.time() + dt), std::move(first.u), std::move(first.p),
          std::move(second.p)};
}

Field step(const Field& u, const SolveConfig& config, double dt) { return step_detailed(u, config, dt).u; }

namespace {

// Largest |u| in the outer 5% of cells next to each artificial (truncation) edge.
double edge_amplitude(const Field& u) {
  const Grid& g = u.grid();
  const int band = std::max(1, g.n_cells() / 20);
  double m = 0.0;
  for (int i = g.n_cells() - band; i < g.n_cells(); ++i) m = std::max(m, std::abs(u[i]));
  if (g.kind() == BoundaryKind::WholeLine)
    for (int i = 0; i < band; ++i) m = std::max(m, std::abs(u[i]));
  return m;
}

}  // namespace

Trajectory run(const SolveConfig& config, const Field& u0) {
  config.validate();
  const Grid grid = config.grid();
  if (!(u0.grid() == grid)) throw std::invalid_argument("run: initial datum is not on the configured grid");

  Trajectory traj;
  traj.config = config;
  traj.warnings = config.warnings();

  const bool half_line = grid.kind() == BoundaryKind::HalfLine;
  BoundsAuditor auditor(config, u0);

  Field u = u0.with_time(0.0);
  SourceTerm source = nonlocal_term(u, config);
  traj.snapshots.push_back({0.0, u, source.p});
  traj.diagnostics.push_back(auditor.audit_step(u, source.p, source.anchor_gap));
  if (half_line) {
    traj.trace_t.push_back(0.0);
    traj.trace_u.push_back(u[0]);
  }

  double t = 0.0;
  const double t_end = config.t_final;
  bool escaped = false;
  const double u0_linf = norm(u0, NormKind::Linf);
  while (t_end - t > 1e-14 * std::max(1.0, t_end)) {
    double dt = cfl_dt(u, config.epsilon, grid.dx(), config.cfl);
    const double remaining = t_end - t;
    const bool last = dt >= remaining;
    if (last) {
      dt = remaining;
    } else if (remaining < 2.0 * dt) {
      dt = 0.5 * remaining;  // no sliver final step
    }
    const long index = traj.steps + 1;
    try {
      auto res = step_detailed(u, config, dt);
      if (config.snapshot_every == 1) traj.stages.push_back({t + dt, std::move(res.stage), std::move(res.p_stage)});
      u = std::move(res.u);
    } catch (const NonFiniteValue& e) {
      std::ostringstream msg;
      msg << "run: non-finite state at step " << index << " (t = " << t + dt
          << "); CFL violation or blow-up. " << e.what();
      throw NumericalBlowup(msg.str(), index);
    }
    t = last ? t_end : t + dt;
    u = u.with_time(t);
    traj.steps = index;
    traj.step_dt.push_back(dt);

    source = nonlocal_term(u, config);
    traj.diagnostics.push_back(auditor.audit_step(u, source.p, source.anchor_gap));
    if (half_line) {
      traj.trace_t.push_back(t);
      traj.trace_u.push_back(u[0]);
    }
    if (last || index % config.snapshot_every == 0) traj.snapshots.push_back({t, u, source.p});

    if (!escaped && edge_amplitude(u) > 1e-8 * std::max(u0_linf, norm(u, NormKind::Linf))) {
      escaped = true;
      std::ostringstream msg;
      msg << "domain escape: |u| near a truncation edge exceeds 1e-8 ||u||_inf first at t = " << t;
      traj.warnings.push_back(msg.str());
    }
  }
  return traj;
}

}  // namespace spe
