#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spe/bounds_audit.hpp"
#include "spe/cli_io.hpp"
#include "spe/entropy_audit.hpp"
#include "spe/evolve.hpp"
#include "spe/experiments.hpp"
#include "spe/initial_data.hpp"
#include "spe/nonlocal_source.hpp"

namespace py = pybind11;
using namespace spe;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(std::span<const double> v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array to_array(const std::vector<double>& v) { return to_array(std::span<const double>(v)); }

Field to_field(const Array& a, const Grid& g) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  return Field(g, std::vector<double>(a.data(), a.data() + a.size()));
}

Array stack(const std::vector<Snapshot>& snaps, bool want_p) {
  const std::size_t n = snaps.empty() ? 0 : snaps.front().u.size();
  Array out({static_cast<py::ssize_t>(snaps.size()), static_cast<py::ssize_t>(n)});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    const Field& f = want_p ? snaps[s].p : snaps[s].u;
    for (std::size_t i = 0; i < n; ++i) m(s, i) = f[i];
  }
  return out;
}

py::dict diagnostics_dict(const Trajectory& t) {
  const CsvTable table = diagnostics_table(t);
  py::dict d;
  for (std::size_t k = 0; k < table.header.size(); ++k) d[py::str(table.header[k])] = to_array(table.columns[k]);
  return d;
}

py::dict summary_dict(const AuditSummary& s) {
  py::list checks;
  for (const auto& c : s.checks) {
    py::dict d;
    d["name"] = c.name;
    d["estimate"] = c.estimate;
    d["evaluated"] = c.evaluated;
    d["failed"] = c.failed;
    d["skipped"] = c.skipped;
    d["worst_usage"] = c.worst_usage;
    d["worst_t"] = c.worst_t;
    d["first_fail_t"] = c.first_fail_t;
    d["passed"] = c.pass();
    checks.append(d);
  }
  py::dict out;
  out["checks"] = checks;
  out["all_pass"] = s.all_pass();
  out["sup_p_l2"] = s.sup_p_l2;
  out["sup_u_linf"] = s.sup_u_linf;
  out["final_mass"] = s.final_mass;
  out["constant_check_count"] = s.constant_check_count;
  if (!s.probes.empty()) {
    const CsvTable p = probe_table(s);
    py::dict probes;
    for (std::size_t k = 0; k < p.header.size(); ++k) probes[py::str(p.header[k])] = to_array(p.columns[k]);
    out["probes"] = probes;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "short pulse equation laboratory: solvers, audits and experiments";

  py::enum_<ProblemKind>(m, "ProblemKind").value("IBVP", ProblemKind::Ibvp).value("CAUCHY", ProblemKind::Cauchy);
  py::enum_<Normalization>(m, "Normalization")
      .value("ANCHOR_AT_ZERO", Normalization::AnchorAtZero)
      .value("DECAY_BOTH_ENDS", Normalization::DecayBothEnds);
  py::enum_<Shape>(m, "Shape")
      .value("GAUSSIAN_DERIVATIVE", Shape::GaussianDerivative)
      .value("MODULATED_PACKET", Shape::ModulatedPacket)
      .value("CUSTOM", Shape::Custom);
  py::enum_<BoundaryForm>(m, "BoundaryForm")
      .value("FLUX_CONSISTENT", BoundaryForm::FluxConsistent)
      .value("AS_WRITTEN", BoundaryForm::AsWritten);

  py::class_<SolveConfig>(m, "SolveConfig")
      .def(py::init<>())
      .def_readwrite("gamma", &SolveConfig::gamma)
      .def_readwrite("epsilon", &SolveConfig::epsilon)
      .def_readwrite("cfl", &SolveConfig::cfl)
      .def_readwrite("t_final", &SolveConfig::t_final)
      .def_readwrite("x_min", &SolveConfig::x_min)
      .def_readwrite("x_max", &SolveConfig::x_max)
      .def_readwrite("n_cells", &SolveConfig::n_cells)
      .def_readwrite("kind", &SolveConfig::kind)
      .def_readwrite("snapshot_every", &SolveConfig::snapshot_every)
      .def_readwrite("normalization", &SolveConfig::normalization)
      .def_readwrite("tolerance", &SolveConfig::tolerance)
      .def("validate", &SolveConfig::validate)
      .def("warnings", &SolveConfig::warnings)
      .def_property_readonly("dx", [](const SolveConfig& c) { return c.grid().dx(); })
      .def_property_readonly("centers", [](const SolveConfig& c) {
        const Grid g = c.grid();
        std::vector<double> x(g.size());
        for (int i = 0; i < g.n_cells(); ++i) x[i] = g.center(i);
        return to_array(x);
      });

  py::class_<InitialSpec>(m, "InitialSpec")
      .def(py::init<>())
      .def_readwrite("shape", &InitialSpec::shape)
      .def_readwrite("amplitude", &InitialSpec::amplitude)
      .def_readwrite("center", &InitialSpec::center)
      .def_readwrite("width", &InitialSpec::width)
      .def_readwrite("wavenumber", &InitialSpec::wavenumber)
      .def_readwrite("custom_x", &InitialSpec::custom_x)
      .def_readwrite("custom_u", &InitialSpec::custom_u);

  m.def("shape_value", &shape_value, py::arg("spec"), py::arg("x"));
  m.def(
      "generate",
      [](const InitialSpec& s, const SolveConfig& c) { return to_array(generate(s, c.grid()).values()); },
      py::arg("spec"), py::arg("config"), "Samples the datum on the config grid with admissibility checks.");
  m.def(
      "project",
      [](const Array& u, const SolveConfig& c) {
        const ProjectedDatum d = validate_and_project(to_field(u, c.grid()));
        py::dict report;
        report["mean_before"] = d.report.mean_before;
        report["u_l1"] = d.report.u_l1;
        report["u_l2"] = d.report.u_l2;
        report["u_linf"] = d.report.u_linf;
        report["p_l2"] = d.report.p_l2;
        return py::make_tuple(to_array(d.field.values()), report);
      },
      py::arg("u"), py::arg("config"), "Removes the discrete mean; returns (u, report).");

  m.def(
      "solve_elliptic",
      [](const Array& u, const SolveConfig& c) {
        const EllipticSolution s = solve_elliptic(to_field(u, c.grid()), {c.epsilon, c.grid(), c.normalization});
        return py::make_tuple(to_array(s.p.values()), s.anchor_gap);
      },
      py::arg("u"), py::arg("config"), "P for -eps P'' + P' = u; returns (P, anchor_gap).");
  m.def(
      "primitive", [](const Array& u, const SolveConfig& c) { return to_array(primitive(to_field(u, c.grid()), 0.0).values()); },
      py::arg("u"), py::arg("config"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("config", &Trajectory::config)
      .def_readonly("steps", &Trajectory::steps)
      .def_readonly("warnings", &Trajectory::warnings)
      .def_property_readonly("t",
                             [](const Trajectory& t) {
                               std::vector<double> v;
                               for (const auto& s : t.snapshots) v.push_back(s.t);
                               return to_array(v);
                             })
      .def_property_readonly("u", [](const Trajectory& t) { return stack(t.snapshots, false); })
      .def_property_readonly("p", [](const Trajectory& t) { return stack(t.snapshots, true); })
      .def_property_readonly("step_dt", [](const Trajectory& t) { return to_array(t.step_dt); })
      .def_property_readonly("trace_t", [](const Trajectory& t) { return to_array(t.trace_t); })
      .def_property_readonly("trace_u", [](const Trajectory& t) { return to_array(t.trace_u); })
      .def_property_readonly("diagnostics", &diagnostics_dict);

  m.def(
      "run", [](const SolveConfig& c, const Array& u0) { return run(c, to_field(u0, c.grid())); }, py::arg("config"),
      py::arg("u0"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "step",
      [](const Array& u, const SolveConfig& c, double dt) { return to_array(step(to_field(u, c.grid()), c, dt).values()); },
      py::arg("u"), py::arg("config"), py::arg("dt"));
  m.def(
      "cfl_dt", [](const Array& u, const SolveConfig& c) { return cfl_dt(to_field(u, c.grid()), c.epsilon, c.grid().dx(), c.cfl); },
      py::arg("u"), py::arg("config"));

  m.def(
      "audit", [](const Trajectory& t) { return summary_dict(audit_trajectory(t)); }, py::arg("trajectory"));
  m.def("kruzkov_flux", &kruzkov_flux, py::arg("u"), py::arg("c"));
  m.def("default_kruzkov_constants", &default_kruzkov_constants, py::arg("trajectory"), py::arg("count") = 17);
  m.def("max_positive_residual", &max_positive_residual, py::arg("trajectory"), py::arg("constants"));
  m.def(
      "entropy_residual",
      [](const Trajectory& t, double c) {
        const EntropyResidual r = interior_entropy_residual(t, c);
        const std::size_t n = r.field.empty() ? 0 : r.field.front().size();
        Array out({static_cast<py::ssize_t>(r.field.size()), static_cast<py::ssize_t>(n)});
        auto v = out.mutable_unchecked<2>();
        for (std::size_t s = 0; s < r.field.size(); ++s)
          for (std::size_t i = 0; i < n; ++i) v(s, i) = r.field[s][i];
        return out;
      },
      py::arg("trajectory"), py::arg("c"), "Cell residual of the Kruzkov inequality, one row per step.");
  m.def(
      "boundary_trace_check",
      [](const Trajectory& t, const std::vector<double>& ks, BoundaryForm form) {
        std::vector<QuadraticEntropy> family;
        for (double k : ks) family.push_back({k});
        return boundary_trace_check(t, family, form);
      },
      py::arg("trajectory"), py::arg("k"), py::arg("form") = BoundaryForm::FluxConsistent);

  m.def(
      "eps_sweep",
      [](const SolveConfig& c, const Array& u0, const std::vector<double>& eps, int threads) {
        EpsSweepResult r;
        const Field f = to_field(u0, c.grid());
        {
          py::gil_scoped_release release;
          r = eps_sweep(c, f, eps, threads);
        }
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["epsilon"] = row.epsilon;
          d["u_gap_l1"] = row.u_gap_l1;
          d["p_gap_l1"] = row.p_gap_l1;
          d["rate"] = row.rate;
          d["steps"] = row.steps;
          d["audit_pass"] = row.audit_pass;
          d["final_mass"] = row.final_mass;
          rows.append(d);
        }
        return py::make_tuple(rows, r.monotone());
      },
      py::arg("config"), py::arg("u0"), py::arg("epsilons"), py::arg("threads") = 0,
      "Returns (rows, monotone).");
  m.def(
      "stability_pair",
      [](const SolveConfig& c, const Array& u0, const Array& v0, double window, int samples, double c_max,
         double c_step) {
        StabilityResult r;
        const Field fu = to_field(u0, c.grid()), fv = to_field(v0, c.grid());
        {
          py::gil_scoped_release release;
          r = stability_pair(c, fu, fv, {window, samples, c_max, c_step});
        }
        py::dict d;
        d["t"] = to_array(r.t);
        d["lhs"] = to_array(r.lhs);
        d["quotient"] = to_array(r.quotient);
        d["fitted_c"] = r.fitted_c;
        d["certified"] = r.certified;
        return d;
      },
      py::arg("config"), py::arg("u0"), py::arg("v0"), py::arg("window"), py::arg("samples") = 40,
      py::arg("c_max") = 50.0, py::arg("c_step") = 0.1);
  m.def("observed_orders", [](const std::vector<double>& errors) {
    std::vector<double> out;
    for (const auto& o : observed_orders(errors)) out.push_back(o.exact ? std::numeric_limits<double>::quiet_NaN() : o.value);
    return out;
  });

  m.def(
      "parse_config",
      [](const std::string& text, const std::map<std::string, std::string>& overrides) {
        const RunSetup s = parse_config_text(text, overrides);
        return py::make_tuple(s.config, s.datum);
      },
      py::arg("text"), py::arg("overrides") = std::map<std::string, std::string>{},
      "Parses `key = value` text; returns (SolveConfig, InitialSpec).");
  m.attr("__version__") = tool_version();

  py::register_exception<NonFiniteValue>(m, "NonFiniteValue", PyExc_FloatingPointError);
}
