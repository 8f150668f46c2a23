#include <doctest.h>

#include <cmath>
#include <random>

#include "spe/evolve.hpp"
#include "spe/nonlocal_source.hpp"
#include "support.hpp"

using namespace spe;
using spe_test::sample;

TEST_CASE("godunov flux is the flux of the right state") {
  CHECK(godunov_flux(0, 0) == 0.0);
  CHECK(godunov_flux(1, 2) == doctest::Approx(-4.0 / 3.0));
  CHECK(godunov_flux(-3, 2) == doctest::Approx(-4.0 / 3.0));
  for (double a : {-2.5, -1.0, 0.0, 0.3, 4.0}) CHECK(godunov_flux(a, a) == cubic_flux(a));
}

TEST_CASE("time step restriction") {
  const Grid g = make_grid(0, 1, 100, BoundaryKind::HalfLine);
  CHECK(cfl_dt(Field::zeros(g), 0.0, 0.01, 0.5) == doctest::Approx(0.5 * 0.01 / 1e-12));

  std::vector<double> v(100, 0.0);
  v[10] = -2.0;
  CHECK(cfl_dt(Field(g, v), 0.01, 0.01, 0.5) == doctest::Approx(0.0025));
  v[10] = 1.0;
  CHECK(cfl_dt(Field(g, v), 0.0, 0.1, 1.0) == doctest::Approx(0.2));
  CHECK_THROWS_AS(cfl_dt(Field(g, v), 0.0, 0.1, 1.5), std::invalid_argument);
}

TEST_CASE("rest state stays at rest") {
  SolveConfig c = spe_test::config(0.5, 0.01, 0.5, 0, 10, 128);
  const Trajectory t = run(c, Field::zeros(c.grid()));
  for (const auto& s : t.snapshots) {
    CHECK(norm(s.u, NormKind::Linf) == 0.0);
    CHECK(norm(s.p, NormKind::Linf) == 0.0);
  }
  for (const auto& d : t.diagnostics) {
    CHECK(d.u_l2 == 0.0);
    CHECK(d.mass == 0.0);
    for (const auto& ch : d.checks) CHECK(ch.actual == 0.0);
  }
}

TEST_CASE("constant state: forward Euler adds gamma P away from the right edge") {
  SolveConfig c = spe_test::config(0.7, 0.0, 1, 0, 4, 40);
  const Grid g = c.grid();
  const Field u = sample(g, [](double) { return 0.3; });
  const Field p = primitive(u, 0.0);
  const auto du = semi_discrete_rhs(u, p, c);
  for (int i = 0; i < 39; ++i) CHECK(du[i] == doctest::Approx(0.7 * p[i]).epsilon(1e-13));
}

TEST_CASE("shock from Riemann data (0, 1) travels at speed -1/6") {
  SolveConfig c = spe_test::config(0.0, 0.0, 1.0, -2, 2, 1024);
  const Grid g = c.grid();
  const Field u0 = sample(g, [](double x) { return (x > 0 && x < 1.5) ? 1.0 : 0.0; });
  c.snapshot_every = 1 << 30;
  const Field u = run(c, u0).snapshots.back().u;
  double front = NAN;
  for (int i = 0; i + 1 < g.n_cells(); ++i)
    if (u[i] < 0.5 && u[i + 1] >= 0.5) {
      front = g.center(i) + (0.5 - u[i]) / (u[i + 1] - u[i]) * g.dx();
      break;
    }
  CHECK(std::abs(front + 1.0 / 6.0) <= 2 * g.dx());
}

TEST_CASE("Riemann data (1, 0) opens a rarefaction u = sqrt(-2x/t)") {
  SolveConfig c = spe_test::config(0.0, 0.0, 1.0, -2, 2, 2048);
  const Grid g = c.grid();
  const Field u0 = sample(g, [](double x) { return (x > -1.5 && x < 0) ? 1.0 : 0.0; });
  c.snapshot_every = 1 << 30;
  const Field u = run(c, u0).snapshots.back().u;
  double err = 0.0;
  for (int i = 0; i < g.n_cells(); ++i) {
    const double x = g.center(i);
    if (x > -0.45 && x < -0.05) err = std::max(err, std::abs(u[i] - std::sqrt(-2 * x)));
  }
  CHECK(err < 0.02);
}

TEST_CASE("flux part conserves mass on the whole line") {
  SolveConfig c = spe_test::config(0.0, 0.02, 1.0, -10, 10, 512);
  const Field u0 = spe_test::gaussian_datum(c, 1.0, 0.7, 1.5);
  const Trajectory t = run(c, u0);
  for (const auto& d : t.diagnostics) CHECK(std::abs(d.mass) < 1e-13);
}

TEST_CASE("viscous mass identity on the half line without source") {
  SolveConfig c = spe_test::config(0.0, 0.05, 1.0, 0, 20, 1024);
  const Field u0 = spe_test::gaussian_datum(c, 8, 1);
  for (const auto& d : run(c, u0).diagnostics)
    CHECK(std::abs(d.mass_identity_residual) < 1e-10 * std::max(1.0, std::abs(d.mass)));
}

TEST_CASE("time stepping self-convergence in cfl") {
  SolveConfig c = spe_test::config(0.5, 0.05, 0.5, 0, 20, 512);
  c.snapshot_every = 1 << 30;
  const Field u0 = spe_test::gaussian_datum(c, 10, 1, 0.5);
  std::vector<Field> finals;
  for (double cfl : {0.5, 0.25, 0.125}) {
    c.cfl = cfl;
    finals.push_back(run(c, u0).snapshots.back().u);
  }
  const double e1 = norm(finals[0] - finals[1], NormKind::L1);
  const double e2 = norm(finals[1] - finals[2], NormKind::L1);
  CHECK(e1 > 0.0);
  CHECK(std::log2(e1 / e2) >= 1.0);
}

TEST_CASE("run bookkeeping") {
  SolveConfig c = spe_test::config(0.5, 0.0, 0.7, 0, 20, 256);
  c.snapshot_every = 5;
  const Field u0 = spe_test::gaussian_datum(c, 10, 1);
  const Trajectory t = run(c, u0);
  CHECK(t.snapshots.back().t == 0.7);
  CHECK(t.snapshots.size() == static_cast<std::size_t>(1 + t.steps / 5 + (t.steps % 5 ? 1 : 0)));
  CHECK(t.diagnostics.size() == static_cast<std::size_t>(t.steps + 1));
  CHECK(t.trace_u.size() == t.diagnostics.size());
  CHECK(t.stages.empty());
  double sum = 0.0;
  for (double dt : t.step_dt) sum += dt;
  CHECK(sum == doctest::Approx(0.7).epsilon(1e-13));
  // no sliver final step
  CHECK(t.step_dt.back() >= 0.25 * t.step_dt.front());

  c.snapshot_every = 1;
  const Trajectory every = run(c, u0);
  CHECK(every.stages.size() == static_cast<std::size_t>(every.steps));
}

TEST_CASE("run rejects mismatched data and invalid configs") {
  SolveConfig c = spe_test::config(0.5, 0.0, 0.7, 0, 20, 256);
  CHECK_THROWS_AS(run(c, Field::zeros(make_grid(0, 10, 256, BoundaryKind::HalfLine))), std::invalid_argument);
  c.cfl = 0;
  CHECK_THROWS_AS(run(c, Field::zeros(make_grid(0, 20, 256, BoundaryKind::HalfLine))), std::invalid_argument);
}

TEST_CASE("step surfaces non-finite states") {
  SolveConfig c = spe_test::config(0.0, 0.0, 1, 0, 1, 16);
  std::vector<double> v(16, 0.0);
  v[8] = 1e120;
  CHECK_THROWS_AS(step(Field(c.grid(), v), c, 1.0), NonFiniteValue);
  CHECK_THROWS_AS(step(Field(c.grid(), v), c, 0.0), std::invalid_argument);
}

TEST_CASE("mass reaching the truncation edge raises a warning") {
  // P anchored at 0 is -A in the far field for a datum centred at 0, so the source
  // fills the truncation bands at once; without the source nothing reaches them.
  auto escaped = [](double gamma) {
    SolveConfig c = spe_test::config(gamma, 0.0, 0.5, -10, 10, 400);
    const Trajectory t = run(c, spe_test::gaussian_datum(c, 0, 1));
    bool escape = false;
    for (const auto& w : t.warnings) escape = escape || w.find("domain escape") != std::string::npos;
    return escape;
  };
  CHECK(escaped(0.5));
  CHECK(!escaped(0.0));
}

TEST_CASE("coarse viscous grids are flagged") {
  SolveConfig c = spe_test::config(0.5, 0.001, 1, 0, 20, 256);
  CHECK(c.warnings().size() == 1);
  c.epsilon = 0.1;
  CHECK(c.warnings().empty());
}
