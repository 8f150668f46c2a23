#include "spe/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spe {

Grid::Grid(double x_min, double x_max, int n_cells, BoundaryKind kind)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells), dx_(0.0), kind_(kind) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_min < x_max))
    throw std::invalid_argument("grid: require finite x_min < x_max");
  if (n_cells < 8) throw std::invalid_argument("grid: n_cells must be >= 8");
  dx_ = (x_max - x_min) / n_cells;
  if (kind == BoundaryKind::HalfLine && x_min != 0.0)
    throw std::invalid_argument("grid: half-line domain must start at x_min = 0");
  if (kind == BoundaryKind::WholeLine) {
    if (!(x_min < 0.0 && 0.0 < x_max))
      throw std::invalid_argument("grid: whole-line domain must satisfy x_min < 0 < x_max");
    if (edge_index(0.0) < 0) throw std::invalid_argument("grid: x = 0 must coincide with a cell edge");
  }
}

int Grid::edge_index(double x) const {
  const double k = (x - x_min_) / dx_;
  const double kr = std::round(k);
  if (kr < 0 || kr > n_cells_ || std::abs(k - kr) > 1e-9) return -1;
  return static_cast<int>(kr);
}

int Grid::zero_edge() const { return kind_ == BoundaryKind::HalfLine ? 0 : edge_index(0.0); }

std::vector<double> Grid::centers() const {
  std::vector<double> x(size());
  for (int i = 0; i < n_cells_; ++i) x[i] = center(i);
  return x;
}

Grid make_grid(double x_min, double x_max, int n_cells, BoundaryKind kind) {
  return Grid(x_min, x_max, n_cells, kind);
}

Field::Field(Grid grid, std::vector<double> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
  if (values_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "field: " << values_.size() << " values for a grid of " << grid_.n_cells() << " cells";
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "field: non-finite value at cell " << i << " (t = " << time << ")";
      throw NonFiniteValue(msg.str());
    }
  }
}

Field Field::zeros(const Grid& grid, double time) {
  return Field(grid, std::vector<double>(grid.size(), 0.0), time);
}

double norm(std::span<const double> values, double dx, NormKind kind) {
  switch (kind) {
    case NormKind::L1: {
      double s = 0.0;
      for (double v : values) s += std::abs(v);
      return s * dx;
    }
    case NormKind::L2: {
      double s = 0.0;
      for (double v : values) s += v * v;
      return std::sqrt(s * dx);
    }
    case NormKind::Linf: {
      double m = 0.0;
      for (double v : values) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

double norm(const Field& f, NormKind kind) { return norm(f.values(), f.grid().dx(), kind); }

double integral(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().dx();
}

namespace {

template <class Transform>
double piecewise_integral(const Field& f, double a, double b, Transform g) {
  const Grid& grid = f.grid();
  a = std::max(a, grid.x_min());
  b = std::min(b, grid.x_max());
  if (!(a < b)) return 0.0;
  const double dx = grid.dx();
  const int first = std::clamp(static_cast<int>(std::floor((a - grid.x_min()) / dx)), 0, grid.n_cells() - 1);
  const int last = std::clamp(static_cast<int>(std::ceil((b - grid.x_min()) / dx)) - 1, 0, grid.n_cells() - 1);
  double s = 0.0;
  for (int i = first; i <= last; ++i) {
    const double lo = std::max(a, grid.edge(i));
    const double hi = std::min(b, grid.edge(i + 1));
    if (hi > lo) s += g(f[i]) * (hi - lo);
  }
  return s;
}

}  // namespace

double integral_over(const Field& f, double a, double b) {
  return piecewise_integral(f, a, b, [](double v) { return v; });
}

double abs_integral_over(const Field& f, double a, double b) {
  return piecewise_integral(f, a, b, [](double v) { return std::abs(v); });
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Field(a.grid(), std::move(out), a.time());
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Field(a.grid(), std::move(out), a.time());
}

Field operator*(double alpha, const Field& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * f[i];
  return Field(f.grid(), std::move(out), f.time());
}

WindowDistance l1_window_distance(const Field& u, const Field& v, double R, double t, double C) {
  require_same_grid(u, v);
  if (!(R > 0.0) || t < 0.0 || C < 0.0) throw std::invalid_argument("l1_window_distance: need R > 0, t >= 0, C >= 0");
  const Grid& g = u.grid();
  const double grown = R + C * t;
  const Field diff = u - v;
  // Slack of 1e-12*dx absorbs rounding in R + C t landing on the boundary.
  const double slack = 1e-12 * g.dx();
  if (g.kind() == BoundaryKind::HalfLine) {
    if (grown > g.x_max() + slack) throw std::out_of_range("l1_window_distance: window (0, R + C t) leaves the domain");
    return {abs_integral_over(diff, 0.0, R), abs_integral_over(diff, 0.0, grown)};
  }
  if (grown > g.x_max() + slack || -grown < g.x_min() - slack)
    throw std::out_of_range("l1_window_distance: window (-R - C t, R + C t) leaves the domain");
  return {abs_integral_over(diff, -R, R), abs_integral_over(diff, -grown, grown)};
}

}  // namespace spe
