#pragma once

#include <string>
#include <vector>

#include "spe/config.hpp"
#include "spe/evolve.hpp"
#include "spe/initial_data.hpp"

namespace spe {

/// Worker count for independent runs: SPE_THREADS if set, else hardware concurrency.
int default_thread_count();

struct EpsSweepRow {
  double epsilon = 0.0;
  double u_gap_l1 = 0.0;  // ||u_eps - u_0||_L1 at t_final
  double p_gap_l1 = 0.0;  // ||P_eps - P_0||_L1 at t_final
  double rate = 0.0;      // log(gap_k / gap_{k+1}) / log(eps_k / eps_{k+1}); NaN on the last row
  long steps = 0;
  bool audit_pass = false;
  double final_mass = 0.0;
  std::vector<std::string> warnings;
};

struct EpsSweepResult {
  long reference_steps = 0;
  std::vector<EpsSweepRow> rows;
  bool monotone() const;  // gaps strictly decrease down the list
};

/// Runs the same datum at each viscosity and compares against the same-grid eps = 0 scheme.
/// The list must hold at least 3 positive values in non-increasing order.
EpsSweepResult eps_sweep(const SolveConfig& base, const Field& u0, const std::vector<double>& epsilons,
                         int threads = 0);

struct ConvergenceOrder {
  double value = 0.0;
  bool exact = false;  // both errors are zero
};

/// log2 of successive error ratios (one doubling per step).
std::vector<ConvergenceOrder> observed_orders(const std::vector<double>& errors);

/// Averages pairs of cells until the field has `coarse_n` cells.
std::vector<double> restrict_conservative(std::span<const double> fine, int coarse_n);

struct RefineRow {
  int n_cells = 0;
  double error = 0.0;  // L1 distance to the restricted finest solution; 0 for the reference row
  ConvergenceOrder order;  // against the next row; unset on the last two rows
  bool has_order = false;
};

struct RefineResult {
  std::vector<RefineRow> rows;
};

/// Self-convergence study: the finest n is the reference. Each n must double the previous one.
RefineResult refine_study(const SolveConfig& base, const InitialSpec& spec, const std::vector<int>& n_cells,
                          int threads = 0);

struct StabilityOptions {
  double window = 1.0;  // R
  int samples = 40;     // observation times t_k = k t_final / samples
  double c_max = 50.0;
  double c_step = 0.1;
};

struct StabilityResult {
  std::vector<double> t;
  std::vector<double> lhs;       // ||u - v||_L1 over the window at t
  std::vector<double> quotient;  // lhs / ||u0 - v0|| over the grown window, at the fitted C
  double fitted_c = 0.0;
  bool certified = false;
};

/// Evolves the pair with config (t_final ends the observation window) and fits the
/// smallest C on the c_step grid with Q(t) <= e^{Ct} at every sample time.
/// Throws std::out_of_range when a candidate window leaves the domain before certification.
StabilityResult stability_pair(const SolveConfig& config, const Field& u0, const Field& v0,
                               const StabilityOptions& options = {});

/// Final state after marching u0 to config.t_final with snapshots only at the end.
Field evolve_to(const SolveConfig& config, const Field& u0);

}  // namespace spe
