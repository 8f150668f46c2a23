#include "spe/nonlocal_source.hpp"

#include <cmath>
#include <sstream>

#include "spe/tridiagonal.hpp"

namespace spe {

std::vector<double> primitive_edges(const Field& u, double anchor) {
  const Grid& g = u.grid();
  const int k0 = g.edge_index(anchor);
  if (k0 < 0) {
    std::ostringstream msg;
    msg << "primitive: anchor " << anchor << " is not a grid edge";
    throw std::invalid_argument(msg.str());
  }
  const int n = g.n_cells();
  const double dx = g.dx();
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = k0 + 1; k <= n; ++k) e[k] = e[k - 1] + u[k - 1] * dx;
  for (int k = k0 - 1; k >= 0; --k) e[k] = e[k + 1] - u[k] * dx;
  return e;
}

Field primitive(const Field& u, double anchor) {
  const Grid& g = u.grid();
  const int k0 = g.edge_index(anchor);
  const auto e = primitive_edges(u, anchor);
  const double half = 0.5 * g.dx();
  std::vector<double> p(g.size());
  // Half-cell correction from the edge nearer to the anchor.
  for (int i = 0; i < g.n_cells(); ++i) p[i] = (i >= k0) ? e[i] + u[i] * half : e[i + 1] - u[i] * half;
  return Field(g, std::move(p), u.time());
}

EllipticSolution solve_elliptic(const Field& u, const EllipticSetup& setup) {
  if (!(setup.epsilon > 0.0))
    throw std::invalid_argument("solve_elliptic: epsilon must be > 0 (use primitive() for epsilon = 0)");
  if (!(u.grid() == setup.grid)) throw std::invalid_argument("solve_elliptic: field and setup grids differ");
  const Grid& g = setup.grid;
  if (g.kind() == BoundaryKind::HalfLine && setup.normalization != Normalization::AnchorAtZero)
    throw std::invalid_argument("solve_elliptic: half-line problems admit only AnchorAtZero");

  const std::size_t n = g.size();
  const double dx = g.dx();
  const double eps = setup.epsilon;
  const double lo = -eps / (dx * dx) - 0.5 / dx;
  const double up = -eps / (dx * dx) + 0.5 / dx;
  const double di = 2.0 * eps / (dx * dx);

  std::vector<double> lower(n, lo), diag(n, di), upper(n, up);
  // Odd ghosts P_{-1} = -P_0, P_n = -P_{n-1} put P = 0 on both truncation edges.
  diag[0] -= lo;
  diag[n - 1] -= up;
  auto p = solve_tridiagonal(lower, diag, upper, u.values());

  double gap = 0.0;
  if (g.kind() == BoundaryKind::WholeLine && setup.normalization == Normalization::AnchorAtZero) {
    const int k = g.zero_edge();
    gap = 0.5 * (p[k - 1] + p[k]);
    for (double& v : p) v -= gap;
  }
  return {Field(g, std::move(p), u.time()), gap};
}

Field second_primitive(const Field& p, PrimitiveOrigin origin) {
  const Grid& g = p.grid();
  const double anchor = (origin == PrimitiveOrigin::FromLeft) ? g.x_min() : g.edge(g.zero_edge());
  return primitive(p, anchor);
}

StencilDerivatives stencil_derivatives(const Field& p, double edge_value) {
  const Grid& g = p.grid();
  const int n = g.n_cells();
  const double dx = g.dx();
  const double two_b = 2.0 * edge_value;
  auto at = [&](int i) { return i < 0 ? two_b - p[0] : (i >= n ? two_b - p[n - 1] : p[i]); };
  StencilDerivatives d{std::vector<double>(g.size()), std::vector<double>(g.size())};
  for (int i = 0; i < n; ++i) {
    d.first[i] = (at(i + 1) - at(i - 1)) / (2.0 * dx);
    d.second[i] = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (dx * dx);
  }
  return d;
}

double edge_gradient(const Field& p, int k, double edge_value) {
  const Grid& g = p.grid();
  const int n = g.n_cells();
  if (k < 0 || k > n) throw std::out_of_range("edge_gradient: edge index out of range");
  if (k == 0) return 2.0 * (p[0] - edge_value) / g.dx();
  if (k == n) return 2.0 * (edge_value - p[n - 1]) / g.dx();
  return (p[k] - p[k - 1]) / g.dx();
}

double EnergyIdentity::relative_residual() const {
  const double scale = std::max(std::abs(rhs), std::abs(lhs));
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

EnergyIdentity elliptic_energy_identity(const Field& u, const Field& p, double epsilon, double edge_value) {
  require_same_grid(u, p);
  const Grid& g = p.grid();
  const auto d = stencil_derivatives(p, edge_value);
  const double dx = g.dx();
  const double dp2 = std::pow(norm(d.first, dx, NormKind::L2), 2);
  const double ddp2 = std::pow(norm(d.second, dx, NormKind::L2), 2);
  double lhs = epsilon * epsilon * ddp2 + dp2;
  if (g.kind() == BoundaryKind::HalfLine) {
    const double g0 = edge_gradient(p, 0, edge_value);
    lhs += epsilon * g0 * g0;
  }
  return {lhs, std::pow(norm(u, NormKind::L2), 2)};
}

}  // namespace spe
