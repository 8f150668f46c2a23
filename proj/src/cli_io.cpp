#include "spe/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace spe {

namespace fs = std::filesystem;

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "kind",  "gamma",     "epsilon",   "cfl",        "t_final",    "x_min",  "x_max",
      "n_cells", "snapshot_every", "normalization", "tolerance", "shape", "amplitude", "center",
      "width", "wavenumber", "datum_file", "kruzkov_count"};
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || !std::isfinite(v))
    throw std::invalid_argument("config: '" + key + "' expects a finite number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
  return v;
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::GaussianDerivative: return "gaussian_derivative";
    case Shape::ModulatedPacket: return "modulated_packet";
    case Shape::Custom: return "custom";
  }
  return "custom";
}

}  // namespace

RunSetup parse_config_text(const std::string& text, const std::map<std::string, std::string>& overrides,
                           const fs::path& base_dir) {
  const std::set<std::string> known(config_keys().begin(), config_keys().end());
  std::map<std::string, std::string> values;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known.count(key))
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (values.count(key))
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    values[key] = value;
  }
  for (const auto& [key, value] : overrides) {
    if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    values[key] = value;
  }
  for (const char* key : {"gamma", "t_final", "x_min", "x_max", "n_cells"})
    if (!values.count(key)) throw std::invalid_argument(std::string("config: missing required key '") + key + "'");

  RunSetup s;
  SolveConfig& c = s.config;
  auto num = [&](const char* key, double fallback) {
    return values.count(key) ? parse_double(key, values[key]) : fallback;
  };
  c.gamma = num("gamma", c.gamma);
  c.epsilon = num("epsilon", c.epsilon);
  c.cfl = num("cfl", c.cfl);
  c.t_final = num("t_final", c.t_final);
  c.x_min = num("x_min", c.x_min);
  c.x_max = num("x_max", c.x_max);
  c.tolerance = num("tolerance", c.tolerance);
  c.n_cells = parse_int("n_cells", values["n_cells"]);
  if (values.count("snapshot_every")) c.snapshot_every = parse_int("snapshot_every", values["snapshot_every"]);
  if (values.count("kruzkov_count")) {
    s.kruzkov_count = parse_int("kruzkov_count", values["kruzkov_count"]);
    if (s.kruzkov_count < 1) throw std::invalid_argument("kruzkov_count must be >= 1");
  }

  if (values.count("kind")) {
    const auto& k = values["kind"];
    if (k == "ibvp") c.kind = ProblemKind::Ibvp;
    else if (k == "cauchy") c.kind = ProblemKind::Cauchy;
    else throw std::invalid_argument("config: kind must be 'ibvp' or 'cauchy', got '" + k + "'");
  } else {
    c.kind = c.x_min < 0.0 ? ProblemKind::Cauchy : ProblemKind::Ibvp;
  }
  if (values.count("normalization")) {
    const auto& n = values["normalization"];
    if (n == "anchor") c.normalization = Normalization::AnchorAtZero;
    else if (n == "decay") c.normalization = Normalization::DecayBothEnds;
    else throw std::invalid_argument("config: normalization must be 'anchor' or 'decay', got '" + n + "'");
  }

  InitialSpec& d = s.datum;
  if (values.count("shape")) {
    const auto& sh = values["shape"];
    if (sh == "gaussian_derivative") d.shape = Shape::GaussianDerivative;
    else if (sh == "modulated_packet") d.shape = Shape::ModulatedPacket;
    else if (sh == "custom") d.shape = Shape::Custom;
    else throw std::invalid_argument("config: unknown shape '" + sh + "'");
  }
  d.amplitude = num("amplitude", 1.0);
  d.center = num("center", 0.5 * (c.x_min + c.x_max));
  d.width = num("width", 1.0);
  d.wavenumber = num("wavenumber", 0.0);
  if (values.count("datum_file")) {
    if (values.count("shape") && d.shape != Shape::Custom)
      throw std::invalid_argument("config: datum_file requires shape = custom");
    fs::path p = values["datum_file"];
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    s.datum_file = p;
    const InitialSpec table = load_custom(p);
    d.shape = Shape::Custom;
    d.custom_x = table.custom_x;
    d.custom_u = table.custom_u;
  } else if (d.shape == Shape::Custom) {
    throw std::invalid_argument("config: shape = custom requires datum_file");
  }
  if (!(d.width > 0.0)) throw std::invalid_argument("config: width must be > 0");

  c.validate();
  return s;
}

RunSetup parse_config_file(const fs::path& path, const std::map<std::string, std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str(), overrides, path.parent_path());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string config_echo(const RunSetup& s) {
  const SolveConfig& c = s.config;
  std::ostringstream out;
  out << "kind = " << to_string(c.kind) << '\n'
      << "gamma = " << format_number(c.gamma) << '\n'
      << "epsilon = " << format_number(c.epsilon) << '\n'
      << "cfl = " << format_number(c.cfl) << '\n'
      << "t_final = " << format_number(c.t_final) << '\n'
      << "x_min = " << format_number(c.x_min) << '\n'
      << "x_max = " << format_number(c.x_max) << '\n'
      << "n_cells = " << c.n_cells << '\n'
      << "snapshot_every = " << c.snapshot_every << '\n'
      << "normalization = " << to_string(c.normalization) << '\n'
      << "tolerance = " << format_number(c.tolerance) << '\n'
      << "shape = " << shape_name(s.datum.shape) << '\n'
      << "amplitude = " << format_number(s.datum.amplitude) << '\n'
      << "center = " << format_number(s.datum.center) << '\n'
      << "width = " << format_number(s.datum.width) << '\n'
      << "wavenumber = " << format_number(s.datum.wavenumber) << '\n'
      << "kruzkov_count = " << s.kruzkov_count << '\n';
  if (!s.datum_file.empty()) out << "datum_file = " << s.datum_file.string() << '\n';
  return out.str();
}

Field initial_field(const RunSetup& setup) {
  return validate_and_project(generate(setup.datum, setup.config.grid())).field;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  std::string s(buf, ptr);
  return s == "-0" ? "0" : s;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("csv: no column '" + name + "'");
  return columns[static_cast<std::size_t>(it - header.begin())];
}

namespace {

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_csv(const fs::path& path, const CsvTable& table) {
  for (const auto& col : table.columns)
    if (col.size() != table.rows()) throw std::invalid_argument("write_csv: ragged columns");
  if (table.columns.size() != table.header.size()) throw std::invalid_argument("write_csv: header/column mismatch");
  auto out = open_for_write(path);
  for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << csv_cell(table.header[j]);
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << format_number(table.columns[j][r]);
    out << '\n';
  }
  finish(out, path);
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto out = open_for_write(path);
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << csv_cell(header[j]);
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("write_csv: row width differs from header");
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_cell(row[j]);
    out << '\n';
  }
  finish(out, path);
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  t.header = split_csv_line(line);
  t.columns.assign(t.header.size(), {});
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != t.header.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": wrong number of cells");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cells[j].data(), cells[j].data() + cells[j].size(), v);
      if (ec != std::errc() || ptr != cells[j].data() + cells[j].size())
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": not a number '" + cells[j] + "'");
      t.columns[j].push_back(v);
    }
  }
  return t;
}

namespace {

void append_snapshot(CsvTable& t, double time, const Field& u, const Field& p) {
  const Grid& g = u.grid();
  for (int i = 0; i < g.n_cells(); ++i) {
    t.columns[0].push_back(time);
    t.columns[1].push_back(g.center(i));
    t.columns[2].push_back(u[i]);
    t.columns[3].push_back(p[i]);
  }
}

CsvTable snapshot_header() {
  CsvTable t;
  t.header = {"t", "x", "u", "P"};
  t.columns.assign(4, {});
  return t;
}

}  // namespace

void write_snapshots(const Trajectory& traj, const fs::path& path) {
  CsvTable t = snapshot_header();
  for (const auto& s : traj.snapshots) append_snapshot(t, s.t, s.u, s.p);
  write_csv(path, t);
}

void write_field(const Field& u, const Field& p, const fs::path& path) {
  require_same_grid(u, p);
  CsvTable t = snapshot_header();
  append_snapshot(t, u.time(), u, p);
  write_csv(path, t);
}

std::vector<Snapshot> read_snapshots(const fs::path& path, const Grid& grid) {
  const CsvTable t = read_csv(path);
  if (t.header != std::vector<std::string>{"t", "x", "u", "P"})
    throw std::runtime_error(path.string() + ": expected header t,x,u,P");
  const std::size_t n = grid.size();
  if (t.rows() % n != 0) throw std::runtime_error(path.string() + ": row count is not a multiple of the grid size");
  std::vector<Snapshot> out;
  for (std::size_t start = 0; start < t.rows(); start += n) {
    const double time = t.columns[0][start];
    std::vector<double> u(t.columns[2].begin() + start, t.columns[2].begin() + start + n);
    std::vector<double> p(t.columns[3].begin() + start, t.columns[3].begin() + start + n);
    out.push_back({time, Field(grid, std::move(u), time), Field(grid, std::move(p), time)});
  }
  return out;
}

CsvTable diagnostics_table(const Trajectory& traj) {
  CsvTable t;
  t.header = {"t",    "mass",  "mass_identity_residual", "u_l2",  "u_linf",       "p_l2",  "p_linf",
              "dp_l2", "G",    "p_mean",                 "first_moment", "a_eps", "a_eps_display", "anchor_gap"};
  t.columns.assign(t.header.size(), {});
  for (const auto& r : traj.diagnostics) {
    // a_eps needs a backward difference, so the first record carries nan.
    const double a = r.a_eps;
    const double ad = r.a_eps_display;
    const double row[] = {r.t,    r.mass,   r.mass_identity_residual, r.u_l2,  r.u_linf, r.p_l2, r.p_linf,
                          r.dp_l2, r.G,     r.p_mean,                 r.first_moment, a,   ad,     r.anchor_gap};
    for (std::size_t j = 0; j < t.header.size(); ++j) t.columns[j].push_back(row[j]);
  }
  return t;
}

void write_audit_summary(const AuditSummary& summary, const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : summary.checks) {
    const char* status = c.skipped ? "skipped" : (c.pass() ? "pass" : "fail");
    rows.push_back({c.name, c.estimate, std::to_string(c.evaluated), std::to_string(c.failed),
                    format_number(c.worst_usage), format_number(c.worst_t), format_number(c.worst_actual),
                    format_number(c.worst_bound), format_number(c.first_fail_t), status});
  }
  write_csv(path, {"check", "estimate", "evaluated", "failed", "worst_usage", "worst_t", "worst_actual", "worst_bound",
                   "first_fail_t", "status"},
            rows);
}

CsvTable probe_table(const AuditSummary& summary) {
  CsvTable t;
  t.header = {"t", "p_integral", "minus_first_moment", "p_right", "p_left_negated", "anchor_gap", "mass"};
  t.columns.assign(t.header.size(), {});
  for (const auto& p : summary.probes) {
    const double row[] = {p.t, p.p_integral, p.minus_first_moment, p.p_right, p.p_left_negated, p.anchor_gap, p.mass};
    for (std::size_t j = 0; j < t.header.size(); ++j) t.columns[j].push_back(row[j]);
  }
  return t;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

std::string tick_label(double v, bool log_axis) {
  if (log_axis) return "1e" + fixed(v, std::abs(v - std::round(v)) < 1e-9 ? 0 : 1);
  std::ostringstream o;
  o << std::setprecision(3) << v;
  return o.str();
}

}  // namespace

std::string svg_string(const Chart& chart) {
  const bool log_axes = chart.kind == ChartKind::LogLog;
  std::vector<std::vector<std::pair<double, double>>> pts;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : chart.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("render_svg: series '" + s.name + "' has x/y size mismatch");
    if (chart.kind == ChartKind::TimeSeries && !std::is_sorted(s.x.begin(), s.x.end()))
      throw std::invalid_argument("render_svg: time series '" + s.name + "' is not ordered in time");
    std::vector<std::pair<double, double>> p;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (log_axes) {
        if (x <= 0.0 || y <= 0.0) continue;
        x = std::log10(x);
        y = std::log10(y);
      }
      p.emplace_back(x, y);
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
    pts.push_back(std::move(p));
  }
  if (!std::isfinite(x0)) throw std::invalid_argument("render_svg: no plottable data");
  if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }

  const double W = 720, H = 440, left = 80, right = 160, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(chart.title)
    << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
    o << "<line x1=\"" << fixed(sx(xv)) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(sx(xv)) << "\" y2=\""
      << top + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
      << tick_label(xv, log_axes) << "</text>\n";
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(sy(yv)) << "\" x2=\"" << left << "\" y2=\"" << fixed(sy(yv))
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << left - 8 << "\" y=\"" << fixed(sy(yv) + 4) << "\" text-anchor=\"end\">"
      << tick_label(yv, log_axes) << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << xml_escape(chart.x_label)
    << "</text>\n";
  o << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << top + ph / 2
    << ")\">" << xml_escape(chart.y_label) << "</text>\n";
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const char* color = palette[s % std::size(palette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts[s].size(); ++i)
      o << (i ? " " : "") << fixed(sx(pts[s][i].first)) << ',' << fixed(sy(pts[s][i].second));
    o << "\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(s);
    o << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw + 32 << "\" y2=\"" << ly - 4
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly << "\">" << xml_escape(chart.series[s].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void render_svg(const Chart& chart, const fs::path& path) {
  const std::string svg = svg_string(chart);
  auto out = open_for_write(path);
  out << svg;
  finish(out, path);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_checksum(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return fnv1a_hex(buf.str());
}

void write_manifest(const RunManifest& m, const fs::path& path) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["input_checksum"] = m.input_checksum;
  j["config"] = m.config;
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& f : m.outputs) j["outputs"].push_back({{"path", f.path}, {"rows", f.rows}, {"columns", f.columns}});
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

RunManifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const auto j = nlohmann::json::parse(in);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.tool_version = j.at("tool_version").get<std::string>();
  m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  m.input_checksum = j.at("input_checksum").get<std::string>();
  m.config = j.at("config").get<std::string>();
  for (const auto& f : j.at("outputs"))
    m.outputs.push_back({f.at("path").get<std::string>(), f.at("rows").get<std::size_t>(), f.at("columns").get<std::size_t>()});
  return m;
}

bool verify_manifest(const fs::path& path, std::string* problem) {
  auto fail = [&](const std::string& why) {
    if (problem) *problem = why;
    return false;
  };
  const RunManifest m = read_manifest(path);
  for (const auto& f : m.outputs) {
    const fs::path p = path.parent_path() / f.path;
    if (!fs::exists(p)) return fail("missing output " + p.string());
    if (p.extension() != ".csv") continue;
    std::ifstream in(p, std::ios::binary);
    std::string line;
    std::getline(in, line);
    const std::size_t cols = split_csv_line(line).size();
    std::size_t rows = 0;
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    if (cols != f.columns || rows != f.rows)
      return fail(p.string() + ": expected " + std::to_string(f.rows) + "x" + std::to_string(f.columns) + ", found " +
                  std::to_string(rows) + "x" + std::to_string(cols));
  }
  return true;
}

std::string tool_version() { return "0.1.0"; }

}  // namespace spe
