#pragma once

#include <string>
#include <vector>

#include "spe/grid_field.hpp"
#include "spe/nonlocal_source.hpp"

namespace spe {

enum class ProblemKind { Ibvp, Cauchy };

/// Parameters of one solve. gamma = 0 is accepted and yields the pure conservation
/// law, which the hyperbolic oracles need; epsilon = 0 selects the entropy scheme.
struct SolveConfig {
  double gamma = 0.5;
  double epsilon = 0.0;
  double cfl = 0.5;
  double t_final = 1.0;
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 256;
  ProblemKind kind = ProblemKind::Ibvp;
  int snapshot_every = 1;
  Normalization normalization = Normalization::AnchorAtZero;
  double tolerance = 0.02;  // multiplicative slack of the a-priori bound checks

  BoundaryKind boundary() const {
    return kind == ProblemKind::Ibvp ? BoundaryKind::HalfLine : BoundaryKind::WholeLine;
  }
  Grid grid() const { return make_grid(x_min, x_max, n_cells, boundary()); }

  /// Throws std::invalid_argument on the first violated invariant.
  void validate() const;

  /// Non-fatal advisories (central elliptic stencil beyond cell Peclet 2).
  std::vector<std::string> warnings() const;
};

std::string to_string(ProblemKind kind);
std::string to_string(Normalization n);

}  // namespace spe
