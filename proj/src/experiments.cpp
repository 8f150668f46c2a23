#include "spe/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "spe/nonlocal_source.hpp"

namespace spe {

int default_thread_count() {
  if (const char* env = std::getenv("SPE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs job(k) for k in [0, count) on up to `threads` workers. Results are written by index,
// so the outcome does not depend on scheduling.
template <class Job>
void parallel_for(std::size_t count, int threads, Job job) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(threads > 0 ? threads : default_thread_count()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          job(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

Field evolve_to(const SolveConfig& config, const Field& u0) {
  SolveConfig c = config;
  c.snapshot_every = std::numeric_limits<int>::max();
  return run(c, u0).snapshots.back().u;
}

bool EpsSweepResult::monotone() const {
  for (std::size_t k = 0; k + 1 < rows.size(); ++k)
    if (!(rows[k + 1].u_gap_l1 < rows[k].u_gap_l1)) return false;
  return true;
}

EpsSweepResult eps_sweep(const SolveConfig& base, const Field& u0, const std::vector<double>& epsilons, int threads) {
  if (epsilons.size() < 3) throw std::invalid_argument("eps_sweep: need at least 3 viscosities");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > 0.0)) throw std::invalid_argument("eps_sweep: viscosities must be positive");
    if (k > 0 && epsilons[k] > epsilons[k - 1]) throw std::invalid_argument("eps_sweep: viscosities must be descending");
  }

  SolveConfig ref_config = base;
  ref_config.epsilon = 0.0;
  ref_config.snapshot_every = std::numeric_limits<int>::max();
  const Trajectory reference = run(ref_config, u0);
  const Snapshot& ref = reference.snapshots.back();

  EpsSweepResult out;
  out.reference_steps = reference.steps;
  out.rows.resize(epsilons.size());
  parallel_for(epsilons.size(), threads, [&](std::size_t k) {
    SolveConfig c = base;
    c.epsilon = epsilons[k];
    c.snapshot_every = std::numeric_limits<int>::max();
    const Trajectory traj = run(c, u0);
    const Snapshot& last = traj.snapshots.back();
    EpsSweepRow& row = out.rows[k];
    row.epsilon = epsilons[k];
    row.u_gap_l1 = norm(last.u - ref.u, NormKind::L1);
    row.p_gap_l1 = norm(last.p - ref.p, NormKind::L1);
    row.steps = traj.steps;
    row.audit_pass = audit_trajectory(traj).all_pass();
    row.final_mass = integral(last.u);
    row.warnings = traj.warnings;
  });
  for (std::size_t k = 0; k < out.rows.size(); ++k) {
    auto& row = out.rows[k];
    row.rate = std::numeric_limits<double>::quiet_NaN();
    if (k + 1 < out.rows.size()) {
      const auto& next = out.rows[k + 1];
      if (row.u_gap_l1 > 0.0 && next.u_gap_l1 > 0.0 && row.epsilon != next.epsilon)
        row.rate = std::log(row.u_gap_l1 / next.u_gap_l1) / std::log(row.epsilon / next.epsilon);
    }
  }
  return out;
}

std::vector<ConvergenceOrder> observed_orders(const std::vector<double>& errors) {
  std::vector<ConvergenceOrder> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    ConvergenceOrder o;
    if (errors[k] == 0.0 && errors[k + 1] == 0.0) {
      o.exact = true;
    } else if (errors[k + 1] == 0.0) {
      o.value = std::numeric_limits<double>::infinity();
    } else {
      o.value = std::log2(errors[k] / errors[k + 1]);
    }
    out.push_back(o);
  }
  return out;
}

std::vector<double> restrict_conservative(std::span<const double> fine, int coarse_n) {
  if (coarse_n <= 0 || fine.size() % static_cast<std::size_t>(coarse_n) != 0)
    throw std::invalid_argument("restrict_conservative: size mismatch");
  const std::size_t ratio = fine.size() / static_cast<std::size_t>(coarse_n);
  std::vector<double> out(static_cast<std::size_t>(coarse_n), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < ratio; ++j) s += fine[i * ratio + j];
    out[i] = s / static_cast<double>(ratio);
  }
  return out;
}

RefineResult refine_study(const SolveConfig& base, const InitialSpec& spec, const std::vector<int>& n_cells,
                          int threads) {
  if (n_cells.size() < 3) throw std::invalid_argument("refine_study: need at least 3 resolutions");
  for (std::size_t k = 1; k < n_cells.size(); ++k)
    if (n_cells[k] != 2 * n_cells[k - 1]) throw std::invalid_argument("refine_study: each n_cells must double the previous");

  std::vector<std::vector<double>> finals(n_cells.size());
  parallel_for(n_cells.size(), threads, [&](std::size_t k) {
    SolveConfig c = base;
    c.n_cells = n_cells[k];
    const Field u0 = validate_and_project(generate(spec, c.grid())).field;
    const Field u = evolve_to(c, u0);
    finals[k].assign(u.values().begin(), u.values().end());
  });

  const auto& finest = finals.back();
  RefineResult out;
  std::vector<double> errors;
  for (std::size_t k = 0; k < n_cells.size(); ++k) {
    RefineRow row;
    row.n_cells = n_cells[k];
    if (k + 1 < n_cells.size()) {
      const auto restricted = restrict_conservative(finest, n_cells[k]);
      double e = 0.0;
      const double dx = (base.x_max - base.x_min) / n_cells[k];
      for (std::size_t i = 0; i < restricted.size(); ++i) e += std::abs(finals[k][i] - restricted[i]) * dx;
      row.error = e;
      errors.push_back(e);
    }
    out.rows.push_back(row);
  }
  const auto orders = observed_orders(errors);
  for (std::size_t k = 0; k < orders.size(); ++k) {
    out.rows[k].order = orders[k];
    out.rows[k].has_order = true;
  }
  return out;
}

StabilityResult stability_pair(const SolveConfig& config, const Field& u0, const Field& v0,
                               const StabilityOptions& spec) {
  require_same_grid(u0, v0);
  if (spec.samples < 1) throw std::invalid_argument("stability_pair: samples must be >= 1");
  if (!(spec.c_step > 0.0)) throw std::invalid_argument("stability_pair: c_step must be positive");
  config.validate();

  StabilityResult out;
  const double t_end = config.t_final;
  SolveConfig segment = config;
  Field u = u0.with_time(0.0);
  Field v = v0.with_time(0.0);
  out.t.push_back(0.0);
  out.lhs.push_back(l1_window_distance(u, v, spec.window, 0.0, 0.0).lhs);
  for (int k = 1; k <= spec.samples; ++k) {
    const double t_prev = t_end * (k - 1) / spec.samples;
    const double t_next = t_end * k / spec.samples;
    segment.t_final = t_next - t_prev;
    u = evolve_to(segment, u.with_time(0.0));
    v = evolve_to(segment, v.with_time(0.0));
    out.t.push_back(t_next);
    out.lhs.push_back(l1_window_distance(u, v, spec.window, t_next, 0.0).lhs);
  }

  const long max_k = static_cast<long>(std::floor(spec.c_max / spec.c_step + 1e-9));
  for (long k = 0; k <= max_k; ++k) {
    const double c = k * spec.c_step;
    std::vector<double> q(out.t.size());
    bool ok = true;
    for (std::size_t j = 0; j < out.t.size(); ++j) {
      const double den = l1_window_distance(u0, v0, spec.window, out.t[j], c).rhs_window;
      q[j] = out.lhs[j] == 0.0 ? 0.0 : (den > 0.0 ? out.lhs[j] / den : std::numeric_limits<double>::infinity());
      // Relative slack of a few rounding units so a bitwise-equal Q = 1 still certifies C = 0.
      if (q[j] > std::exp(c * out.t[j]) * (1.0 + 1e-12)) ok = false;
    }
    if (ok) {
      out.fitted_c = c;
      out.quotient = std::move(q);
      out.certified = true;
      return out;
    }
  }
  out.fitted_c = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace spe
