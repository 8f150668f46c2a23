#include "spe/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "spe/nonlocal_source.hpp"

namespace spe {

double envelope_value(const InitialSpec& spec, double x) {
  const double s = x - spec.center;
  const double gauss = spec.amplitude * std::exp(-(s * s) / (spec.width * spec.width));
  switch (spec.shape) {
    case Shape::GaussianDerivative:
      return gauss;
    case Shape::ModulatedPacket:
      return gauss * std::cos(spec.wavenumber * s);
    case Shape::Custom:
      break;
  }
  throw std::invalid_argument("envelope_value: custom data has no closed-form envelope");
}

double shape_value(const InitialSpec& spec, double x) {
  const double s = x - spec.center;
  const double w2 = spec.width * spec.width;
  const double gauss = spec.amplitude * std::exp(-(s * s) / w2);
  switch (spec.shape) {
    case Shape::GaussianDerivative:
      return -2.0 * s / w2 * gauss;
    case Shape::ModulatedPacket: {
      const double k = spec.wavenumber;
      return gauss * (-2.0 * s / w2 * std::cos(k * s) - k * std::sin(k * s));
    }
    case Shape::Custom: {
      const auto& xs = spec.custom_x;
      const auto& us = spec.custom_u;
      if (x <= xs.front() || x >= xs.back()) return 0.0;
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const std::size_t j = static_cast<std::size_t>(it - xs.begin());
      const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
      return (1.0 - w) * us[j - 1] + w * us[j];
    }
  }
  return 0.0;
}

namespace {

void check_spec(const InitialSpec& spec) {
  if (spec.shape == Shape::Custom) {
    if (spec.custom_x.size() < 2 || spec.custom_x.size() != spec.custom_u.size())
      throw std::invalid_argument("initial data: custom table needs at least two (x, u) rows");
    if (!std::is_sorted(spec.custom_x.begin(), spec.custom_x.end()) ||
        std::adjacent_find(spec.custom_x.begin(), spec.custom_x.end()) != spec.custom_x.end())
      throw std::invalid_argument("initial data: custom x column must be strictly increasing");
    return;
  }
  if (!(spec.width > 0.0)) throw std::invalid_argument("initial data: width must be > 0");
  if (!std::isfinite(spec.amplitude) || !std::isfinite(spec.center) || !std::isfinite(spec.wavenumber))
    throw std::invalid_argument("initial data: non-finite parameter");
}

}  // namespace

Field generate(const InitialSpec& spec, const Grid& grid) {
  check_spec(spec);
  std::vector<double> u(grid.size());
  for (int i = 0; i < grid.n_cells(); ++i) u[i] = shape_value(spec, grid.center(i));

  double scale = std::abs(spec.amplitude);
  if (spec.shape == Shape::Custom) scale = norm(u, grid.dx(), NormKind::Linf);
  const double threshold = 1e-14 * scale;
  const double margin = 0.1 * (grid.x_max() - grid.x_min());
  const double inner_lo = grid.x_min() + margin;
  const double inner_hi = grid.x_max() - margin;
  for (int i = 0; i < grid.n_cells(); ++i) {
    const double x = grid.center(i);
    if ((x < inner_lo || x > inner_hi) && std::abs(u[i]) > threshold) {
      std::ostringstream msg;
      msg << "initial data: |u0(" << x << ")| = " << std::abs(u[i]) << " exceeds 1e-14*A outside the inner 80% ("
          << inner_lo << ", " << inner_hi << ") of the domain";
      throw std::domain_error(msg.str());
    }
  }
  return Field(grid, std::move(u), 0.0);
}

InitialSpec load_custom(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("initial data: cannot open " + path.string());
  InitialSpec spec;
  spec.shape = Shape::Custom;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    double x, u;
    if (!(ls >> x)) continue;
    if (!(ls >> u)) throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    spec.custom_x.push_back(x);
    spec.custom_u.push_back(u);
  }
  check_spec(spec);
  return spec;
}

ProjectedDatum validate_and_project(const Field& u0) {
  const Grid& grid = u0.grid();
  std::vector<double> v(u0.values().begin(), u0.values().end());

  AdmissibilityReport report;
  report.mean_before = integral(u0);
  const double linf = norm(u0, NormKind::Linf);
  if (std::abs(report.mean_before) > 1e-6 * linf || (linf == 0.0 && report.mean_before != 0.0)) {
    std::ostringstream msg;
    msg << "initial data: integral of u0 is " << report.mean_before << " (> 1e-6 * ||u0||_inf = " << 1e-6 * linf
        << "); the datum must have zero mean";
    throw std::domain_error(msg.str());
  }

  // Remove the mean in proportion to |u| so cells outside the support stay exactly zero.
  const double abs_sum = std::accumulate(v.begin(), v.end(), 0.0, [](double s, double x) { return s + std::abs(x); });
  if (abs_sum > 0.0) {
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x -= sum * std::abs(x) / abs_sum;
    const auto peak = static_cast<std::size_t>(
        std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }) - v.begin());
    for (int pass = 0; pass < 4; ++pass) {
      const double rest = std::accumulate(v.begin(), v.end(), 0.0);
      if (rest == 0.0) break;
      v[peak] -= rest;
    }
  }

  Field projected(grid, std::move(v), u0.time());
  report.u_l1 = norm(projected, NormKind::L1);
  report.u_l2 = norm(projected, NormKind::L2);
  report.u_linf = norm(projected, NormKind::Linf);
  report.p_l2 = norm(primitive(projected, grid.x_min()), NormKind::L2);
  return {std::move(projected), report};
}

}  // namespace spe
