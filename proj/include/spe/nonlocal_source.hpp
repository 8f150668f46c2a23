#pragma once

#include <vector>

#include "spe/grid_field.hpp"

namespace spe {

/// How the truncated elliptic problem is closed.
///  - AnchorAtZero: P = 0 at x = 0. On a half-line this is the Dirichlet condition at the
///    physical boundary; on the whole line the decaying solution is shifted so that P(0) = 0.
///  - DecayBothEnds: homogeneous Dirichlet at both truncation edges (whole line only).
enum class Normalization { AnchorAtZero, DecayBothEnds };

struct EllipticSetup {
  double epsilon;
  Grid grid;
  Normalization normalization = Normalization::AnchorAtZero;
};

struct EllipticSolution {
  Field p;
  /// Constant subtracted to enforce P(0) = 0 on the whole line; 0 otherwise.
  double anchor_gap = 0.0;
};

/// Cumulative midpoint primitive of u, zero at the grid edge located at `anchor`.
Field primitive(const Field& u, double anchor);

/// Primitive values on the n + 1 grid edges.
std::vector<double> primitive_edges(const Field& u, double anchor);

/// Solves -eps P'' + P' = u with central differences and homogeneous Dirichlet data
/// at both truncation edges (odd ghost cells), then applies the normalization.
EllipticSolution solve_elliptic(const Field& u, const EllipticSetup& setup);

enum class PrimitiveOrigin { FromLeft, FromZero };

/// F(x) = integral of P from the left edge (FromLeft) or from x = 0 (FromZero).
Field second_primitive(const Field& p, PrimitiveOrigin origin);

/// Discrete derivatives matching the elliptic stencil: central first and second
/// differences with ghost values reflecting P about `edge_value` on both truncation
/// edges (edge_value = -anchor_gap for a shifted whole-line solution).
struct StencilDerivatives {
  std::vector<double> first;
  std::vector<double> second;
};
StencilDerivatives stencil_derivatives(const Field& p, double edge_value = 0.0);

/// dP/dx on grid edge k with P taken as `edge_value` on the truncation edges.
double edge_gradient(const Field& p, int k, double edge_value = 0.0);

/// Terms of the elliptic energy identity eps^2 ||P''||^2 + eps P'(0)^2 + ||P'||^2 = ||u||^2
/// (half-line) or eps^2 ||P''||^2 + ||P'||^2 = ||u||^2 (whole line).
struct EnergyIdentity {
  double lhs;
  double rhs;
  double relative_residual() const;
};
EnergyIdentity elliptic_energy_identity(const Field& u, const Field& p, double epsilon, double edge_value = 0.0);

}  // namespace spe
