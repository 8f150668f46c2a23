// spe: command line front end for the short pulse laboratory.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spe/cli_io.hpp"
#include "spe/entropy_audit.hpp"
#include "spe/experiments.hpp"

namespace fs = std::filesystem;
using namespace spe;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = "spe_out";
  std::map<std::string, std::string> flags;  // --key value overrides
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("config", c.config_path, "key = value configuration file")->required()->check(CLI::ExistingFile);
  app->add_option("-o,--out", c.out_dir, "output directory");
  for (const auto& key : config_keys()) {
    std::string flag = "--" + key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    app->add_option_function<std::string>(flag, [&c, key](const std::string& v) { c.flags[key] = v; },
                                          "override '" + key + "' from the file");
  }
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Session {
public:
  Session(std::string command, const Common& common)
      : command_(std::move(command)), out_(common.out_dir), start_(std::chrono::steady_clock::now()) {
    setup_ = parse_config_file(common.config_path, common.flags);
    std::string input = read_text(common.config_path) + config_echo(setup_);
    if (!setup_.datum_file.empty()) input += read_text(setup_.datum_file);
    checksum_ = fnv1a_hex(input);
    fs::create_directories(out_);
    for (const auto& w : setup_.config.warnings()) std::cerr << "warning: " << w << '\n';
  }

  RunSetup& setup() { return setup_; }
  fs::path path(const std::string& name) const { return out_ / name; }

  void csv(const std::string& name, const CsvTable& t) {
    write_csv(path(name), t);
    outputs_.push_back({name, t.rows(), t.header.size()});
  }
  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
    write_csv(path(name), header, rows);
    outputs_.push_back({name, rows.size(), header.size()});
  }
  void svg(const std::string& name, const Chart& chart) {
    render_svg(chart, path(name));
    outputs_.push_back({name, 0, 0});
  }
  void note(const std::string& name, std::size_t rows, std::size_t cols) { outputs_.push_back({name, rows, cols}); }

  void finish() {
    RunManifest m;
    m.command = command_;
    m.config = config_echo(setup_);
    m.tool_version = tool_version();
    m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    m.input_checksum = checksum_;
    m.outputs = outputs_;
    write_manifest(m, path("manifest.json"));
  }

private:
  std::string command_;
  fs::path out_;
  std::chrono::steady_clock::time_point start_;
  RunSetup setup_;
  std::string checksum_;
  std::vector<OutputFile> outputs_;
};

double trace_gap(const Trajectory& traj) {
  const auto ex = extrapolated_trace(traj);
  double m = 0.0;
  for (std::size_t k = 0; k < ex.size(); ++k) m = std::max(m, std::abs(traj.snapshots[k].u[0] - ex[k]));
  return m;
}

void print_warnings(const Trajectory& traj) {
  for (std::size_t k = traj.config.warnings().size(); k < traj.warnings.size(); ++k)
    std::cerr << "warning: " << traj.warnings[k] << '\n';
}

int cmd_solve(const Common& common) {
  Session s("solve", common);
  const Field u0 = initial_field(s.setup());
  const Trajectory traj = run(s.setup().config, u0);
  print_warnings(traj);
  write_snapshots(traj, s.path("snapshots.csv"));
  s.note("snapshots.csv", traj.snapshots.size() * static_cast<std::size_t>(s.setup().config.n_cells), 4);
  s.csv("diagnostics.csv", diagnostics_table(traj));
  if (!traj.trace_u.empty()) s.csv("trace.csv", CsvTable{{"t", "u_trace"}, {traj.trace_t, traj.trace_u}});
  s.finish();
  std::cout << "solved to t = " << format_number(traj.snapshots.back().t) << " in " << traj.steps << " steps; "
            << traj.snapshots.size() << " snapshots written to " << common.out_dir << '\n';
  return 0;
}

int cmd_audit(const Common& common) {
  Session s("audit", common);
  SolveConfig config = s.setup().config;
  config.snapshot_every = 1;  // the entropy residual needs every step
  const Field u0 = initial_field(s.setup());
  const Trajectory traj = run(config, u0);
  print_warnings(traj);
  const AuditSummary summary = audit_trajectory(traj);

  write_audit_summary(summary, s.path("audit.csv"));
  s.note("audit.csv", summary.checks.size(), 10);
  s.csv("diagnostics.csv", diagnostics_table(traj));

  std::cout << "bound checks (tolerance " << format_number(config.tolerance) << ")\n";
  for (const auto& c : summary.checks) {
    const char* status = c.skipped ? "SKIP" : (c.pass() ? "PASS" : "FAIL");
    std::cout << "  " << status << "  " << c.name << "  worst usage " << format_number(c.worst_usage) << " at t = "
              << format_number(c.worst_t) << "  (" << c.failed << "/" << c.evaluated << " steps failed)\n";
  }

  const auto constants = default_kruzkov_constants(traj, s.setup().kruzkov_count);
  CsvTable entropy{{"c", "max_positive_part", "min_value"}, {{}, {}, {}}};
  for (double c : constants) {
    const auto r = interior_entropy_residual(traj, c);
    entropy.columns[0].push_back(c);
    entropy.columns[1].push_back(r.max_positive_part);
    entropy.columns[2].push_back(r.min_value);
  }
  s.csv("entropy.csv", entropy);
  double worst = 0.0;
  for (double v : entropy.columns[1]) worst = std::max(worst, v);
  std::cout << "entropy residual (report): max positive part " << format_number(worst) << " over "
            << constants.size() << " Kruzkov constants\n";
  if (config.kind == ProblemKind::Ibvp) {
    std::vector<QuadraticEntropy> family;
    for (int k = -5; k <= 5; ++k) family.push_back({static_cast<double>(k)});
    std::cout << "boundary entropy condition (report): worst left side "
              << format_number(boundary_trace_check(traj, family)) << " (flux-consistent sign), "
              << format_number(boundary_trace_check(traj, family, BoundaryForm::AsWritten))
              << " (opposite eta'(0) sign), k = -5..5\n"
              << "  with the extrapolated trace: " << format_number(boundary_condition_worst(extrapolated_trace(traj), family))
              << ", max |first-cell - extrapolated| " << format_number(trace_gap(traj)) << '\n';
  } else {
    s.csv("probes.csv", probe_table(summary));
    const auto& last = summary.probes.back();
    std::cout << "open-claim probes at t = " << format_number(last.t) << " (report only)\n"
              << "  integral of P            " << format_number(last.p_integral) << '\n'
              << "  -integral of x u         " << format_number(last.minus_first_moment) << '\n'
              << "  anchor gap P(0)          " << format_number(last.anchor_gap) << '\n';
  }
  std::cout << "sup ||P||_2 = " << format_number(summary.sup_p_l2) << ", final mass = " << format_number(summary.final_mass)
            << '\n';
  s.finish();
  const bool ok = summary.all_pass();
  std::cout << (ok ? "audit: all checks pass\n" : "audit: FAILED\n");
  return ok ? 0 : 1;
}

int cmd_sweep(const Common& common, const std::vector<double>& eps) {
  Session s("sweep-eps", common);
  const Field u0 = initial_field(s.setup());
  const auto result = eps_sweep(s.setup().config, u0, eps);
  CsvTable t{{"epsilon", "u_gap_l1", "p_gap_l1", "rate", "steps", "final_mass", "audit_pass"}, {}};
  t.columns.assign(t.header.size(), {});
  Series gap{"||u_eps - u||_L1", {}, {}};
  for (const auto& r : result.rows) {
    const double row[] = {r.epsilon, r.u_gap_l1, r.p_gap_l1, r.rate, static_cast<double>(r.steps), r.final_mass,
                          r.audit_pass ? 1.0 : 0.0};
    for (std::size_t j = 0; j < t.header.size(); ++j) t.columns[j].push_back(row[j]);
    gap.x.push_back(r.epsilon);
    gap.y.push_back(r.u_gap_l1);
    std::cout << "eps " << format_number(r.epsilon) << "  gap " << format_number(r.u_gap_l1) << "  P gap "
              << format_number(r.p_gap_l1) << '\n';
    for (const auto& w : r.warnings) std::cerr << "warning (eps " << format_number(r.epsilon) << "): " << w << '\n';
  }
  s.csv("sweep.csv", t);
  s.svg("sweep.svg", Chart{ChartKind::LogLog, "vanishing viscosity gap", "epsilon", "L1 gap", {gap}});
  s.finish();
  std::cout << (result.monotone() ? "gap decreases monotonically\n" : "gap is NOT monotone\n");
  return 0;
}

int cmd_refine(const Common& common, std::vector<int> ns) {
  Session s("refine", common);
  if (ns.empty()) {
    const int n = s.setup().config.n_cells;
    ns = {n / 4, n / 2, n};
  }
  const auto result = refine_study(s.setup().config, s.setup().datum, ns);
  CsvTable t{{"n_cells", "error", "order", "exact"}, {}};
  t.columns.assign(4, {});
  for (const auto& r : result.rows) {
    t.columns[0].push_back(r.n_cells);
    t.columns[1].push_back(r.error);
    t.columns[2].push_back(r.has_order && !r.order.exact ? r.order.value : std::nan(""));
    t.columns[3].push_back(r.order.exact ? 1.0 : 0.0);
    std::cout << "n " << r.n_cells << "  error " << format_number(r.error);
    if (r.has_order) std::cout << "  order " << (r.order.exact ? std::string("exact") : format_number(r.order.value));
    std::cout << '\n';
  }
  s.csv("refine.csv", t);
  s.finish();
  return 0;
}

int cmd_stability(const Common& common, double perturb, StabilityOptions opts) {
  Session s("stability", common);
  const Field u0 = initial_field(s.setup());
  RunSetup other = s.setup();
  other.datum.amplitude *= 1.0 + perturb;
  const Field v0 = initial_field(other);
  const auto r = stability_pair(s.setup().config, u0, v0, opts);
  CsvTable t{{"t", "lhs", "quotient"}, {r.t, r.lhs, r.quotient}};
  if (!r.certified) t.columns[2].assign(r.t.size(), std::nan(""));
  s.csv("stability.csv", t);
  if (r.certified) {
    std::vector<double> bound;
    for (double tt : r.t) bound.push_back(std::exp(r.fitted_c * tt));
    s.svg("stability.svg", Chart{ChartKind::TimeSeries, "L1 stability quotient", "t", "Q(t)",
                                 {{"Q(t)", r.t, r.quotient}, {"exp(C t)", r.t, bound}}});
  }
  s.finish();
  if (!r.certified) {
    std::cout << "no C <= " << format_number(opts.c_max) << " certifies the stability bound\n";
    return 1;
  }
  std::cout << "fitted C = " << format_number(r.fitted_c) << '\n';
  return 0;
}

int cmd_plot(const std::string& input, const std::string& kind, const std::string& x, const std::vector<std::string>& ys,
             const std::string& out, const std::string& title, double at_time, bool has_time) {
  const CsvTable t = read_csv(input);
  Chart chart;
  chart.kind = kind == "profile" ? ChartKind::Profile : kind == "timeseries" ? ChartKind::TimeSeries : ChartKind::LogLog;
  chart.title = title.empty() ? fs::path(input).filename().string() : title;
  chart.x_label = x;
  chart.y_label = ys.size() == 1 ? ys.front() : "";
  const auto& xs = t.column(x);
  // Snapshot files hold several times; a profile shows one of them.
  std::vector<std::size_t> rows;
  if (chart.kind == ChartKind::Profile && std::find(t.header.begin(), t.header.end(), "t") != t.header.end()) {
    const auto& ts = t.column("t");
    double pick = ts.back();
    if (has_time) {
      double best = INFINITY;
      for (double v : ts)
        if (std::abs(v - at_time) < best) { best = std::abs(v - at_time); pick = v; }
    }
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (ts[i] == pick) rows.push_back(i);
    chart.title += " (t = " + format_number(pick) + ")";
  } else {
    for (std::size_t i = 0; i < t.rows(); ++i) rows.push_back(i);
  }
  for (const auto& y : ys) {
    const auto& col = t.column(y);
    Series s{y, {}, {}};
    for (std::size_t i : rows) {
      s.x.push_back(xs[i]);
      s.y.push_back(col[i]);
    }
    chart.series.push_back(std::move(s));
  }
  render_svg(chart, out);
  std::cout << "wrote " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Short pulse equation laboratory: viscous and entropy schemes, audits and experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  Common solve_c, audit_c, sweep_c, refine_c, stab_c;
  auto* solve = app.add_subcommand("solve", "run one solve and write snapshots and diagnostics");
  add_common(solve, solve_c);

  auto* audit = app.add_subcommand("audit", "run the bound and entropy audits; exit 1 on any failed bound check");
  add_common(audit, audit_c);

  std::vector<double> eps = {0.1, 0.03, 0.01, 0.003};
  auto* sweep = app.add_subcommand("sweep-eps", "vanishing viscosity sweep against the eps = 0 scheme");
  add_common(sweep, sweep_c);
  sweep->add_option("--eps", eps, "descending viscosities")->delimiter(',');

  std::vector<int> ns;
  auto* refine = app.add_subcommand("refine", "self-convergence study over doubling grids");
  add_common(refine, refine_c);
  refine->add_option("--n", ns, "doubling list of n_cells (default n/4, n/2, n)")->delimiter(',');

  double perturb = 0.1;
  StabilityOptions opts;
  auto* stab = app.add_subcommand("stability", "fit the L1 stability constant for an amplitude-perturbed pair");
  add_common(stab, stab_c);
  stab->add_option("--perturb", perturb, "relative amplitude perturbation of the second datum");
  stab->add_option("--window", opts.window, "window half-width R")->required();
  stab->add_option("--samples", opts.samples, "number of observation times");
  stab->add_option("--c-max", opts.c_max, "largest C tried");
  stab->add_option("--c-step", opts.c_step, "grid step for C");

  std::string plot_in, plot_kind = "profile", plot_x = "x", plot_out = "plot.svg", plot_title;
  std::vector<std::string> plot_y = {"u"};
  double at_time = 0.0;
  auto* plot = app.add_subcommand("plot", "render a CSV file as an SVG line chart");
  plot->add_option("csv", plot_in, "input CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--kind", plot_kind, "profile, timeseries or loglog")
      ->check(CLI::IsMember({"profile", "timeseries", "loglog"}));
  plot->add_option("--x", plot_x, "x column");
  plot->add_option("--y", plot_y, "y columns")->delimiter(',');
  plot->add_option("-o,--out", plot_out, "output SVG");
  plot->add_option("--title", plot_title, "chart title");
  auto* at_opt = plot->add_option("--at-time", at_time, "snapshot time for profiles (default: last)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors share the configuration error code
  }
  try {
    if (*solve) return cmd_solve(solve_c);
    if (*audit) return cmd_audit(audit_c);
    if (*sweep) return cmd_sweep(sweep_c, eps);
    if (*refine) return cmd_refine(refine_c, ns);
    if (*stab) return cmd_stability(stab_c, perturb, opts);
    if (*plot) return cmd_plot(plot_in, plot_kind, plot_x, plot_y, plot_out, plot_title, at_time, at_opt->count() > 0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
