#include "spe/config.hpp"

#include <cmath>
#include <sstream>

namespace spe {

void SolveConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!std::isfinite(gamma) || gamma < 0.0) fail("gamma must be >= 0");
  if (!std::isfinite(epsilon) || epsilon < 0.0) fail("epsilon must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl must lie in (0, 1]");
  if (!std::isfinite(t_final) || t_final < 0.0) fail("t_final must be >= 0");
  if (snapshot_every < 1) fail("snapshot_every must be >= 1");
  if (!(tolerance >= 0.0)) fail("tolerance must be >= 0");
  if (kind == ProblemKind::Ibvp && x_min != 0.0) fail("kind = ibvp requires x_min = 0 (half-line domain)");
  if (kind == ProblemKind::Cauchy && !(x_min < 0.0 && x_max > 0.0)) fail("kind = cauchy requires x_min < 0 < x_max");
  if (kind == ProblemKind::Ibvp && normalization != Normalization::AnchorAtZero)
    fail("normalization = decay is only available for kind = cauchy");
  (void)grid();  // grid invariants: n_cells >= 8, 0 on an edge
}

std::vector<std::string> SolveConfig::warnings() const {
  std::vector<std::string> out;
  const double dx = (x_max - x_min) / n_cells;
  if (epsilon > 0.0 && dx > 2.0 * epsilon) {
    std::ostringstream msg;
    msg << "dx = " << dx << " exceeds 2*epsilon = " << 2.0 * epsilon
        << "; the central elliptic stencil is past cell Peclet 2 (consider epsilon = 0 or a finer grid)";
    out.push_back(msg.str());
  }
  return out;
}

std::string to_string(ProblemKind kind) { return kind == ProblemKind::Ibvp ? "ibvp" : "cauchy"; }

std::string to_string(Normalization n) { return n == Normalization::AnchorAtZero ? "anchor" : "decay"; }

}  // namespace spe
