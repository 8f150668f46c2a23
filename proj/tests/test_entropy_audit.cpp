#include <doctest.h>

#include <cmath>
#include <limits>

#include "spe/entropy_audit.hpp"
#include "support.hpp"

using namespace spe;
using spe_test::sample;

namespace {

Trajectory riemann_run(int n, double left, double right, double gamma = 0.0) {
  SolveConfig c = spe_test::config(gamma, 0.0, 1.0, -2, 2, n);
  const Field u0 = sample(c.grid(), [&](double x) {
    if (x < -1.5 || x > 1.5) return 0.0;
    return x < 0 ? left : right;
  });
  return run(c, u0);
}

}  // namespace

TEST_CASE("Kruzkov flux values") {
  CHECK(kruzkov_flux(0.7, 0.7) == 0.0);
  CHECK(kruzkov_flux(2, 1) == doctest::Approx(-7.0 / 6.0));
  CHECK(kruzkov_flux(0, 1) == doctest::Approx(-1.0 / 6.0));
  // continuity at u = c
  for (double c : {-1.3, 0.0, 2.0}) {
    CHECK(std::abs(kruzkov_flux(c + 1e-9, c)) < 1e-8);
    CHECK(std::abs(kruzkov_flux(c - 1e-9, c)) < 1e-8);
  }
}

TEST_CASE("quadratic entropy flux satisfies q' = -(u^2/2) eta'") {
  for (double k : {-2.0, 0.0, 0.5, 3.0}) {
    const QuadraticEntropy e{k};
    for (double u = -3.0; u <= 3.0; u += 0.25) {
      const double h = 1e-5;
      const double fd = (e.flux(u + h) - e.flux(u - h)) / (2 * h);
      const double exact = -(u * u / 2) * e.d_eta(u);
      CHECK(fd == doctest::Approx(exact).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("entropy residual needs every step") {
  SolveConfig c = spe_test::config(0.0, 0.0, 0.2, 0, 10, 64);
  c.snapshot_every = 2;
  const Trajectory t = run(c, Field::zeros(c.grid()));
  CHECK_THROWS_AS(interior_entropy_residual(t, 0.0), std::invalid_argument);
}

TEST_CASE("zero trajectory has no positive residual") {
  SolveConfig c = spe_test::config(0.5, 0.0, 0.2, 0, 10, 64);
  const Trajectory t = run(c, Field::zeros(c.grid()));
  for (double k : {-1.0, 0.5, 2.0}) {
    const auto r = interior_entropy_residual(t, k);
    CHECK(r.max_positive_part == 0.0);
  }
}

TEST_CASE("monotone scheme satisfies the discrete Kruzkov inequality on a shock") {
  const Trajectory t = riemann_run(512, 0.0, 1.0);
  double worst = 0.0, most_negative = 0.0;
  for (double c = -2; c <= 2; c += 0.25) {
    const auto r = interior_entropy_residual(t, c);
    worst = std::max(worst, r.max_positive_part);
    most_negative = std::min(most_negative, r.min_value);
  }
  CHECK(worst < 1e-10);
  CHECK(most_negative < -1.0);  // dissipation at the shock
}

TEST_CASE("shock cells dissipate entropy") {
  const Trajectory t = riemann_run(512, 0.0, 1.0);
  const auto r = interior_entropy_residual(t, 0.5);
  const auto& last = r.field.back();
  const Grid& g = t.snapshots.front().u.grid();
  // front near x = -1/6 at t = 1
  double near_front = 0.0;
  for (int i = 0; i < g.n_cells(); ++i)
    if (std::abs(g.center(i) + 1.0 / 6.0) < 3 * g.dx()) near_front = std::min(near_front, last[i]);
  CHECK(near_front < 0.0);
}

TEST_CASE("with the source the violation lives on a shrinking set") {
  // Cells where u crosses c carry an O(gamma |P|) pointwise residual; their
  // space-time measure is O(dx), so the integrated positive part decreases.
  double prev = 0.0;
  for (int n : {256, 512, 1024}) {
    // long enough that dt, not t_final, limits the step
    SolveConfig c = spe_test::config(0.5, 0.0, 2.0, 0, 20, n);
    const Field u0 = spe_test::gaussian_datum(c, 10, 1.2, 0.5);
    const Trajectory t = run(c, u0);
    double mass = 0.0;
    for (double k : {-0.3, -0.1, 0.1, 0.3}) {
      const auto r = interior_entropy_residual(t, k);
      for (std::size_t s = 0; s < r.field.size(); ++s) {
        const double dt = t.snapshots[s + 1].t - t.snapshots[s].t;
        for (double v : r.field[s]) mass += std::max(v, 0.0) * c.grid().dx() * dt;
      }
    }
    if (prev > 0.0) CHECK(mass < 0.75 * prev);
    prev = mass;
  }
}

TEST_CASE("summed test-function form is nonpositive for a nonnegative weight") {
  const Trajectory t = riemann_run(256, 0.0, 1.0);
  const auto phi = [](double tt, double x) { return std::exp(-x * x) * (1.0 + tt); };
  for (double c : {-0.5, 0.25, 0.75}) CHECK(weighted_entropy_residual(t, c, phi) <= 1e-12);
  // and it equals the weighted sum of the cell residual field
  const auto r = interior_entropy_residual(t, 0.25);
  const Grid& g = t.snapshots.front().u.grid();
  double sum = 0.0;
  for (std::size_t s = 0; s < r.field.size(); ++s) {
    const double dt = t.snapshots[s + 1].t - t.snapshots[s].t;
    const double tm = 0.5 * (t.snapshots[s + 1].t + t.snapshots[s].t);
    for (int i = 0; i < g.n_cells(); ++i) sum += r.field[s][i] * phi(tm, g.center(i)) * g.dx() * dt;
  }
  CHECK(weighted_entropy_residual(t, 0.25, phi) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("default Kruzkov constants span the solution range") {
  const Trajectory t = riemann_run(128, 0.0, 1.0);
  const auto cs = default_kruzkov_constants(t);
  CHECK(cs.size() == 17);
  CHECK(cs.front() == doctest::Approx(-1.0));
  CHECK(cs.back() == doctest::Approx(1.0));
}

TEST_CASE("boundary entropy condition") {
  std::vector<QuadraticEntropy> family;
  for (int k = -5; k <= 5; ++k) family.push_back({static_cast<double>(k)});

  SolveConfig c = spe_test::config(0.5, 0.0, 0.3, 0, 10, 128);
  const Trajectory rest = run(c, Field::zeros(c.grid()));
  CHECK(boundary_trace_check(rest, family) == 0.0);

  c = spe_test::config(0.5, 0.0, 4.0, 0, 20, 512);
  const Trajectory t = run(c, spe_test::gaussian_datum(c, 5, 0.5, 1.5));
  double trace_max = 0.0;
  for (double w : t.trace_u) trace_max = std::max(trace_max, std::abs(w));
  CHECK(trace_max > 1e-3);  // the pulse reaches the boundary

  // k = 0: condition is q(u) <= q(0)
  const QuadraticEntropy k0{0.0};
  for (double w : t.trace_u) CHECK(k0.flux(w) <= k0.flux(0.0) + 1e-15);
  // every quadratic gives the same sign: the left side is -w^4/4 <= 0
  for (const auto& e : family) {
    const double v = boundary_trace_check(t, {e});
    CHECK(v <= 1e-15 * std::pow(std::abs(e.k) + 1, 4));  // q carries k^4 / 4 cancellation
  }
  CHECK(std::abs(boundary_trace_check(t, family)) < 1e-12);  // attained at t = 0

  // the other sign of the eta'(0) term gives -w^4/4 + 2 k w^3 / 3
  for (const auto& e : family) {
    double expect = -std::numeric_limits<double>::infinity();
    for (double w : t.trace_u) expect = std::max(expect, -std::pow(w, 4) / 4 + 2 * e.k * std::pow(w, 3) / 3);
    CHECK(boundary_trace_check(t, {e}, BoundaryForm::AsWritten) == doctest::Approx(expect).epsilon(1e-12).scale(1e-12));
  }
  CHECK(boundary_trace_check(t, family, BoundaryForm::AsWritten) > 0.0);

  // the extrapolated surrogate differs from the first-cell value but keeps the sign
  const auto ex = extrapolated_trace(t);
  CHECK(ex.size() == t.snapshots.size());
  CHECK(boundary_condition_worst(ex, family) <= 1e-12);

  const Trajectory cauchy = run(spe_test::config(0.5, 0.0, 0.1, -5, 5, 64), Field::zeros(make_grid(-5, 5, 64, BoundaryKind::WholeLine)));
  CHECK_THROWS_AS(boundary_trace_check(cauchy, family), std::invalid_argument);
}
