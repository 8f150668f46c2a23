#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spe {

/// Half-line problems live on (0, L); whole-line problems on (-L1, L2) with 0 on a cell edge.
enum class BoundaryKind { HalfLine, WholeLine };

enum class NormKind { L1, L2, Linf };

/// Uniform cell-centered mesh over a truncated domain.
class Grid {
public:
  Grid(double x_min, double x_max, int n_cells, BoundaryKind kind);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int n_cells() const { return n_cells_; }
  std::size_t size() const { return static_cast<std::size_t>(n_cells_); }
  double dx() const { return dx_; }
  BoundaryKind kind() const { return kind_; }

  double center(int i) const { return x_min_ + (i + 0.5) * dx_; }
  double edge(int k) const { return x_min_ + k * dx_; }

  /// Index k of the edge located at x, or -1 when x is not an edge (relative tolerance 1e-9 of dx).
  int edge_index(double x) const;

  /// Index of the edge at x = 0; HalfLine returns 0.
  int zero_edge() const;

  std::vector<double> centers() const;

  bool operator==(const Grid&) const = default;

private:
  double x_min_;
  double x_max_;
  int n_cells_;
  double dx_;
  BoundaryKind kind_;
};

Grid make_grid(double x_min, double x_max, int n_cells, BoundaryKind kind);

/// Cell values at one time instant. Immutable; every value is finite.
class Field {
public:
  Field(Grid grid, std::vector<double> values, double time = 0.0);

  static Field zeros(const Grid& grid, double time = 0.0);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  double time() const { return time_; }

  Field with_time(double t) const { return Field(grid_, values_, t); }

private:
  Grid grid_;
  std::vector<double> values_;
  double time_;
};

/// Thrown when a field would carry NaN or Inf.
class NonFiniteValue : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

double norm(const Field& f, NormKind kind);
double norm(std::span<const double> values, double dx, NormKind kind);

/// Midpoint quadrature of the cell values.
double integral(const Field& f);

/// Exact integral of the piecewise-constant representation over [a, b] (clipped to the grid).
double integral_over(const Field& f, double a, double b);
double abs_integral_over(const Field& f, double a, double b);

Field operator-(const Field& a, const Field& b);
Field operator+(const Field& a, const Field& b);
Field operator*(double alpha, const Field& f);

struct WindowDistance {
  double lhs;         // ||u - v||_{L1} over the inner window
  double rhs_window;  // ||u - v||_{L1} over the window grown by C*t
};

/// Restricted L1 distances used by the L1-stability estimate.
/// HalfLine: (0, R) and (0, R + C t). WholeLine: (-R, R) and (-R - C t, R + C t).
WindowDistance l1_window_distance(const Field& u, const Field& v, double R, double t, double C);

void require_same_grid(const Field& a, const Field& b);

}  // namespace spe
