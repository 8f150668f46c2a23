#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "spe/bounds_audit.hpp"
#include "spe/config.hpp"
#include "spe/evolve.hpp"
#include "spe/initial_data.hpp"

namespace spe {

/// Everything a `key = value` file can describe: the solve and the initial datum.
struct RunSetup {
  SolveConfig config;
  InitialSpec datum;
  std::filesystem::path datum_file;  // set when the datum is tabulated
  int kruzkov_count = 17;
};

/// Keys accepted in config files (and as --key flags on the command line).
const std::vector<std::string>& config_keys();

/// Parses line-oriented `key = value` text; '#' starts a comment. Keys in `overrides` replace
/// file keys. Unknown or duplicated keys, unparsable values and missing required keys
/// (gamma, t_final, x_min, x_max, n_cells) throw std::invalid_argument. The result is validated.
RunSetup parse_config_text(const std::string& text, const std::map<std::string, std::string>& overrides = {},
                           const std::filesystem::path& base_dir = {});
RunSetup parse_config_file(const std::filesystem::path& path,
                           const std::map<std::string, std::string>& overrides = {});

/// Canonical `key = value` text for a setup; parsing it gives the same setup back.
std::string config_echo(const RunSetup& setup);

/// Samples and projects the datum described by a setup.
Field initial_field(const RunSetup& setup);

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);

/// Numeric CSV table: header plus equally long columns.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
/// Mixed text/number rows; cells containing ',', '"' or newlines are quoted.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
CsvTable read_csv(const std::filesystem::path& path);

/// `t,x,u,P`, one row per (snapshot, cell).
void write_snapshots(const Trajectory& traj, const std::filesystem::path& path);
void write_field(const Field& u, const Field& p, const std::filesystem::path& path);
/// Snapshots read back from write_snapshots output; the grid is taken from `grid`.
std::vector<Snapshot> read_snapshots(const std::filesystem::path& path, const Grid& grid);

CsvTable diagnostics_table(const Trajectory& traj);
void write_audit_summary(const AuditSummary& summary, const std::filesystem::path& path);
CsvTable probe_table(const AuditSummary& summary);

enum class ChartKind { Profile, TimeSeries, LogLog };

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  ChartKind kind = ChartKind::Profile;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Self-contained SVG line chart, one polyline per series. LogLog plots log10 of both axes
/// and drops non-positive points. Throws on empty data and, for TimeSeries, on decreasing x.
std::string svg_string(const Chart& chart);
void render_svg(const Chart& chart, const std::filesystem::path& path);

struct OutputFile {
  std::string path;  // relative to the manifest directory
  std::size_t rows = 0;
  std::size_t columns = 0;
};

struct RunManifest {
  std::string command;
  std::string config;  // config echo
  std::string tool_version;
  double wall_clock_seconds = 0.0;
  std::string input_checksum;
  std::vector<OutputFile> outputs;
};

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& bytes);
std::string file_checksum(const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);
/// Every listed output exists and has the recorded data-row and column counts.
bool verify_manifest(const std::filesystem::path& path, std::string* problem = nullptr);

std::string tool_version();

}  // namespace spe
