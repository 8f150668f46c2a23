#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "spe/config.hpp"
#include "spe/grid_field.hpp"
#include "spe/initial_data.hpp"

namespace spe_test {

inline spe::Field sample(const spe::Grid& g, auto fn, double t = 0.0) {
  std::vector<double> v(g.size());
  for (int i = 0; i < g.n_cells(); ++i) v[i] = fn(g.center(i));
  return spe::Field(g, std::move(v), t);
}

// Zero-mean smooth datum: derivative of a random sum of Gaussians placed inside [a, b].
struct RandomBumps {
  std::vector<double> amp, center, width;

  RandomBumps(std::mt19937_64& rng, double a, double b, int count = 3) {
    std::uniform_real_distribution<double> A(-1.0, 1.0), C(a, b), W(0.3, 1.0);
    for (int k = 0; k < count; ++k) {
      amp.push_back(A(rng));
      center.push_back(C(rng));
      width.push_back(W(rng));
    }
  }
  double envelope(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) s += amp[k] * std::exp(-std::pow((x - center[k]) / width[k], 2));
    return s;
  }
  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      const double r = (x - center[k]) / width[k];
      s += -2.0 * r / width[k] * amp[k] * std::exp(-r * r);
    }
    return s;
  }
};

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline spe::SolveConfig config(double gamma, double eps, double t, double x_min, double x_max, int n) {
  spe::SolveConfig c;
  c.gamma = gamma;
  c.epsilon = eps;
  c.t_final = t;
  c.x_min = x_min;
  c.x_max = x_max;
  c.n_cells = n;
  c.kind = x_min < 0.0 ? spe::ProblemKind::Cauchy : spe::ProblemKind::Ibvp;
  return c;
}

inline spe::Field gaussian_datum(const spe::SolveConfig& c, double center, double width, double amp = 1.0) {
  spe::InitialSpec s;
  s.amplitude = amp;
  s.center = center;
  s.width = width;
  return spe::validate_and_project(spe::generate(s, c.grid())).field;
}

}  // namespace spe_test
