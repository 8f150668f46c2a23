#include "spe/bounds_audit.hpp"

#include <algorithm>
#include <cmath>

#include "spe/evolve.hpp"
#include "spe/nonlocal_source.hpp"

namespace spe {

CheckStatus Check::status_at(double tolerance) const {
  if (skipped) return CheckStatus::Skipped;
  return usage(tolerance) <= 1.0 ? CheckStatus::Pass : CheckStatus::Fail;
}

double Check::usage(double tolerance) const {
  if (skipped) return 0.0;
  const double allowed = (kind == CheckKind::Inequality) ? bound * (1.0 + tolerance) : tolerance * scale;
  if (actual <= 0.0) return 0.0;
  if (allowed <= 0.0) return std::numeric_limits<double>::infinity();
  return actual / allowed;
}

bool DiagnosticsRecord::all_pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status() == CheckStatus::Fail; });
}

int DiagnosticsRecord::evaluated_checks() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.skipped; }));
}

double gradient_energy(const Field& u) {
  const int n = static_cast<int>(u.size());
  const double dx = u.grid().dx();
  double s = u[0] * u[0] + u[n - 1] * u[n - 1];
  for (int i = 1; i < n; ++i) s += (u[i] - u[i - 1]) * (u[i] - u[i - 1]);
  return s / dx;  // sum of (face difference / dx)^2 * dx
}

BoundsAuditor::BoundsAuditor(const SolveConfig& config, const Field& u0)
    : config_(config), u0_l2_(norm(u0, NormKind::L2)), u0_linf_(norm(u0, NormKind::Linf)) {}

DiagnosticsRecord BoundsAuditor::audit_step(const Field& u, const Field& p, double anchor_gap) {
  require_same_grid(u, p);
  const Grid& g = u.grid();
  const double dx = g.dx();
  const double t = u.time();
  const double gamma = config_.gamma;
  const double eps = config_.epsilon;
  const double tol = config_.tolerance;
  const bool half_line = g.kind() == BoundaryKind::HalfLine;
  const bool viscous = eps > 0.0;
  const int k0 = g.zero_edge();

  DiagnosticsRecord r;
  r.t = t;
  r.anchor_gap = anchor_gap;
  r.mass = integral(u);
  r.u_l2 = norm(u, NormKind::L2);
  r.u_linf = norm(u, NormKind::Linf);
  r.p_l2 = norm(p, NormKind::L2);
  r.p_linf = norm(p, NormKind::Linf);
  r.p_mean = integral(p);
  r.p_right = integral_over(p, 0.0, g.x_max());
  r.p_left = half_line ? 0.0 : integral_over(p, g.x_min(), 0.0);
  for (int i = 0; i < g.n_cells(); ++i) r.first_moment += g.center(i) * u[i] * dx;

  if (half_line) {
    r.u_at0 = 0.5 * u[0];
    r.du_at0 = u[0] / dx;
  } else {
    r.u_at0 = 0.5 * (u[k0 - 1] + u[k0]);
    r.du_at0 = (u[k0] - u[k0 - 1]) / dx;
  }

  // Derivatives of P consistent with how P was produced.
  std::vector<double> dp, ddp;
  if (viscous) {
    auto d = stencil_derivatives(p, -anchor_gap);
    dp = std::move(d.first);
    ddp = std::move(d.second);
    r.dp_at0 = edge_gradient(p, k0, -anchor_gap);
  } else {
    dp.assign(u.values().begin(), u.values().end());
    r.dp_at0 = r.u_at0;
  }
  r.dp_l2 = norm(dp, dx, NormKind::L2);
  r.G = r.p_l2 * r.p_l2 + eps * eps * r.dp_l2 * r.dp_l2;

  // Running time integrals by the trapezoid rule.
  const double dissipation = std::exp(-2.0 * gamma * t) * gradient_energy(u);
  if (started_) {
    const double h = t - last_t_;
    p_linf_integral_ += 0.5 * h * (last_p_linf_ + r.p_linf);
    dissipation_integral_ += 0.5 * h * (last_dissipation_ + dissipation);
    if (h > 0.0 && gamma > 0.0) {
      const double dtdx_p0 = (r.dp_at0 - last_dp_at0_) / h;
      r.a_eps = (eps * dtdx_p0 + std::pow(r.u_at0, 3) / 6.0 + eps * r.du_at0) / gamma;
      r.a_eps_display = (eps * dtdx_p0 + r.u_at0 / 6.0 + eps * r.du_at0) / gamma;
    }
  }
  started_ = true;
  last_t_ = t;
  last_p_linf_ = r.p_linf;
  last_dissipation_ = dissipation;
  last_dp_at0_ = r.dp_at0;

  const double growth = std::exp(gamma * t) * u0_l2_;
  auto inequality = [&](std::string name, std::string estimate, double actual, double bound, bool skip = false) {
    Check c;
    c.name = std::move(name);
    c.estimate = std::move(estimate);
    c.kind = CheckKind::Inequality;
    c.actual = actual;
    c.bound = bound;
    c.tol = tol;
    c.skipped = skip;
    r.checks.push_back(std::move(c));
  };
  auto identity = [&](std::string name, std::string estimate, double residual, double scale, double tolerance,
                      bool skip = false) {
    Check c;
    c.name = std::move(name);
    c.estimate = std::move(estimate);
    c.kind = CheckKind::Identity;
    c.actual = std::abs(residual);
    c.scale = scale;
    c.tol = tolerance;
    c.skipped = skip;
    r.checks.push_back(std::move(c));
  };

  inequality("l2_energy", "||u||^2 + 2 eps e^{2 gamma t} int e^{-2 gamma s}||u_x||^2 <= e^{2 gamma t}||u0||^2",
             r.u_l2 * r.u_l2 + 2.0 * eps * std::exp(2.0 * gamma * t) * dissipation_integral_, growth * growth);
  inequality("p_linf_interpolation", "||P||_inf <= sqrt(2 e^{gamma t} ||u0||_2 ||P||_2)", r.p_linf,
             std::sqrt(2.0 * std::exp(gamma * t) * u0_l2_ * r.p_l2));
  inequality("u_linf_growth", "||u||_inf <= ||u0||_inf + gamma int_0^t ||P||_inf", r.u_linf,
             u0_linf_ + gamma * p_linf_integral_);
  inequality("dp_l2", "||P_x||_2 <= e^{gamma t} ||u0||_2", r.dp_l2, growth);
  inequality("eps_dxx_p_l2", "eps ||P_xx||_2 <= e^{gamma t} ||u0||_2",
             viscous ? eps * norm(ddp, dx, NormKind::L2) : 0.0, growth, !viscous);
  inequality("sqrt_eps_dp_at0", "sqrt(eps) |P_x(t,0)| <= e^{gamma t} ||u0||_2", std::sqrt(eps) * std::abs(r.dp_at0),
             growth, !viscous);
  inequality("sqrt_eps_dp_linf", "sqrt(eps) ||P_x||_inf <= e^{gamma t} ||u0||_2",
             std::sqrt(eps) * norm(dp, dx, NormKind::Linf), growth, !viscous);
  double up = 0.0;
  for (int i = 0; i < g.n_cells(); ++i) up += u[i] * p[i] * dx;
  inequality("up_integral", "int u P <= ||u||_2^2", up, r.u_l2 * r.u_l2);

  const double l1 = norm(u, NormKind::L1);
  if (half_line) {
    r.mass_identity_residual = r.mass - eps * r.dp_at0;
    identity("mass_identity", "int u = eps P_x(t,0)", r.mass_identity_residual, l1, tol);
  } else {
    r.mass_identity_residual = r.mass;
    identity("mass_identity", "int u = 0", r.mass_identity_residual, l1, tol);
  }
  if (viscous) {
    const auto e = elliptic_energy_identity(u, p, eps, -anchor_gap);
    identity("elliptic_energy", half_line ? "eps^2||P_xx||^2 + eps P_x(0)^2 + ||P_x||^2 = ||u||^2"
                                          : "eps^2||P_xx||^2 + ||P_x||^2 = ||u||^2",
             e.lhs - e.rhs, e.rhs, 0.01);
  } else {
    identity("elliptic_energy", "eps^2||P_xx||^2 + ||P_x||^2 = ||u||^2", 0.0, 0.0, 0.01, true);
  }
  return r;
}

bool AuditSummary::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckSummary& c) { return c.pass(); });
}

AuditSummary audit_trajectory(const Trajectory& traj) {
  AuditSummary s;
  bool first = true;
  for (const auto& rec : traj.diagnostics) {
    if (first) {
      for (const auto& c : rec.checks) {
        CheckSummary cs;
        cs.name = c.name;
        cs.estimate = c.estimate;
        s.checks.push_back(cs);
      }
      s.evaluated_per_step = rec.evaluated_checks();
      first = false;
    }
    if (rec.evaluated_checks() != s.evaluated_per_step || rec.checks.size() != s.checks.size())
      s.constant_check_count = false;
    for (std::size_t k = 0; k < rec.checks.size() && k < s.checks.size(); ++k) {
      const Check& c = rec.checks[k];
      CheckSummary& cs = s.checks[k];
      if (c.skipped) continue;
      cs.skipped = false;
      ++cs.evaluated;
      if (c.status() == CheckStatus::Fail && cs.failed++ == 0) cs.first_fail_t = rec.t;
      const double usage = c.usage(c.tol);
      if (cs.evaluated == 1 || usage > cs.worst_usage) {
        cs.worst_usage = usage;
        cs.worst_t = rec.t;
        cs.worst_actual = c.actual;
        cs.worst_bound = c.kind == CheckKind::Inequality ? c.bound : c.tol * c.scale;
      }
    }
    s.sup_p_l2 = std::max(s.sup_p_l2, rec.p_l2);
    s.sup_p_linf = std::max(s.sup_p_linf, rec.p_linf);
    s.sup_u_linf = std::max(s.sup_u_linf, rec.u_linf);
    s.sup_abs_mass = std::max(s.sup_abs_mass, std::abs(rec.mass));
    s.final_mass = rec.mass;
    s.probes.push_back({rec.t, rec.p_mean, -rec.first_moment, rec.p_right, -rec.p_left, rec.a_eps, rec.a_eps_display,
                        rec.anchor_gap, rec.mass});
  }
  if (!s.constant_check_count) {
    CheckSummary cs;
    cs.name = "check_bookkeeping";
    cs.estimate = "same number of evaluated checks at every step";
    cs.evaluated = 1;
    cs.failed = 1;
    cs.skipped = false;
    s.checks.push_back(cs);
  }
  return s;
}

}  // namespace spe
