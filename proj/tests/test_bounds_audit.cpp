#include <doctest.h>

#include <cmath>
#include <random>

#include "spe/bounds_audit.hpp"
#include "spe/evolve.hpp"
#include "support.hpp"

using namespace spe;

namespace {

const CheckSummary& find(const AuditSummary& s, const std::string& name) {
  for (const auto& c : s.checks)
    if (c.name == name) return c;
  throw std::out_of_range(name);
}

const Check& find(const DiagnosticsRecord& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::out_of_range(name);
}

}  // namespace

TEST_CASE("zero trajectory: all sups vanish and identities are exact") {
  SolveConfig c = spe_test::config(0.5, 0.05, 0.3, 0, 10, 128);
  const AuditSummary s = audit_trajectory(run(c, Field::zeros(c.grid())));
  CHECK(s.all_pass());
  CHECK(s.sup_p_l2 == 0.0);
  CHECK(s.sup_u_linf == 0.0);
  CHECK(s.sup_abs_mass == 0.0);
  for (const auto& ch : s.checks) CHECK(ch.worst_actual == 0.0);
}

TEST_CASE("initial record saturates the energy bound") {
  SolveConfig c = spe_test::config(0.5, 0.01, 0.1, 0, 20, 1024);
  const Field u0 = spe_test::gaussian_datum(c, 10, 1);
  const Trajectory t = run(c, u0);
  const Check& l2 = find(t.diagnostics.front(), "l2_energy");
  CHECK(l2.actual == doctest::Approx(l2.bound).epsilon(1e-14));
  CHECK(l2.usage(c.tolerance) == doctest::Approx(1.0 / 1.02));
  CHECK(l2.status() == CheckStatus::Pass);
}

TEST_CASE("energy bound value at t = 2 is e^{2 gamma t} ||u0||^2") {
  SolveConfig c = spe_test::config(0.5, 0.01, 2.0, 0, 20, 256);
  c.epsilon = 0.05;
  const Field u0 = spe_test::gaussian_datum(c, 10, 1);
  const Trajectory t = run(c, u0);
  const double n0 = norm(u0, NormKind::L2);
  CHECK(find(t.diagnostics.back(), "l2_energy").bound == doctest::Approx(std::exp(2.0) * n0 * n0).epsilon(1e-12));
  CHECK(find(t.diagnostics.back(), "dp_l2").bound == doctest::Approx(std::exp(1.0) * n0).epsilon(1e-12));
}

TEST_CASE("checks are monotone in tolerance") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  for (int k = 0; k < 500; ++k) {
    Check c;
    c.kind = (k % 2) ? CheckKind::Inequality : CheckKind::Identity;
    c.actual = d(rng);
    c.bound = d(rng);
    c.scale = d(rng);
    const double t1 = d(rng) * 0.1, t2 = t1 + d(rng) * 0.1;
    if (c.status_at(t1) == CheckStatus::Pass) CHECK(c.status_at(t2) == CheckStatus::Pass);
    CHECK(c.usage(t2) <= c.usage(t1));
  }
}

TEST_CASE("without the source every bound and identity holds") {
  SolveConfig c = spe_test::config(0.0, 0.01, 2.0, 0, 20, 1024);
  const Trajectory t = run(c, spe_test::gaussian_datum(c, 10, 1));
  const AuditSummary s = audit_trajectory(t);
  CHECK(s.all_pass());
  CHECK(s.constant_check_count);
  CHECK(find(s, "elliptic_energy").worst_usage < 1e-6);
  // L2 non-increasing at gamma = 0
  for (std::size_t k = 1; k < t.diagnostics.size(); ++k)
    CHECK(t.diagnostics[k].u_l2 <= t.diagnostics[k - 1].u_l2 * (1 + 1e-14));
}

TEST_CASE("inviscid runs skip the viscous checks but keep a constant count") {
  SolveConfig c = spe_test::config(0.5, 0.0, 0.5, 0, 20, 256);
  const AuditSummary s = audit_trajectory(run(c, spe_test::gaussian_datum(c, 10, 1)));
  CHECK(s.constant_check_count);
  CHECK(find(s, "eps_dxx_p_l2").skipped);
  CHECK(find(s, "elliptic_energy").skipped);
  CHECK(!find(s, "l2_energy").skipped);
  CHECK(s.evaluated_per_step == 6);
}

TEST_CASE("energy functional and boundary quantities") {
  SolveConfig c = spe_test::config(0.5, 0.05, 0.2, 0, 20, 512);
  const Trajectory t = run(c, spe_test::gaussian_datum(c, 10, 1));
  for (const auto& r : t.diagnostics)
    CHECK(r.G == doctest::Approx(r.p_l2 * r.p_l2 + c.epsilon * c.epsilon * r.dp_l2 * r.dp_l2));
  CHECK(std::isnan(t.diagnostics.front().a_eps));
  for (std::size_t k = 1; k < t.diagnostics.size(); ++k) {
    CHECK(std::isfinite(t.diagnostics[k].a_eps));
    CHECK(std::isfinite(t.diagnostics[k].a_eps_display));
  }
}

TEST_CASE("Cauchy audit carries the report-only probes") {
  SolveConfig c = spe_test::config(0.5, 0.05, 0.5, -10, 10, 512);
  const Trajectory t = run(c, spe_test::gaussian_datum(c, 0.5, 1));
  const AuditSummary s = audit_trajectory(t);
  REQUIRE(s.probes.size() == t.diagnostics.size());
  const Grid g = c.grid();
  const auto& last = t.snapshots.back();
  double moment = 0.0;
  for (int i = 0; i < g.n_cells(); ++i) moment += g.center(i) * last.u[i] * g.dx();
  CHECK(s.probes.back().minus_first_moment == doctest::Approx(-moment));
  CHECK(s.probes.back().p_integral == doctest::Approx(integral(last.p)));
  CHECK(s.probes.back().p_integral ==
        doctest::Approx(s.probes.back().p_right - s.probes.back().p_left_negated).epsilon(1e-12));
  CHECK(std::abs(s.probes.back().anchor_gap) > 0.0);
}

TEST_CASE("mass identity on the half line holds while the source is off") {
  SolveConfig c = spe_test::config(0.0, 0.02, 1.0, 0, 20, 1024);
  const AuditSummary s = audit_trajectory(run(c, spe_test::gaussian_datum(c, 10, 1)));
  CHECK(find(s, "mass_identity").pass());
}
