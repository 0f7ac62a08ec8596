#pragma once

// Table reproduction and parameter sweeps behind the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "teleportality/states.hpp"

namespace teleportality {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Numeric value of a cell; throws ArgumentError for text cells.
  double number(std::size_t row, std::string_view column) const;
  std::size_t column_index(std::string_view column) const;
};

enum class OutputFormat { Csv, Json };

/// Header row, comma separated, numbers with 12 significant digits, LF endings.
void write_csv(std::ostream& os, const Table& t);
/// Array of objects keyed by column name.
void write_json(std::ostream& os, const Table& t);
/// Aligned console table with `digits` significant digits.
void write_text(std::ostream& os, const Table& t, int digits = 6);
void write_table(std::ostream& os, const Table& t, OutputFormat format);

/// Formats a number with the given significant digits (printf %g).
std::string format_number(double x, int digits);

struct ScanConfig {
  int grid_n = 128;
  ResourceParams resource{std::numbers::pi / 4, 0.0};
  std::vector<double> p_values{0.5};
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> out;
  std::uint64_t seed = 0;
  std::size_t samples = 100000;

  /// Throws ArgumentError when grid_n < 2, p outside [0,1] or the
  /// resource parameters are out of range.
  void validate() const;
};

/// Parses "0.5" or "start:end:steps" (steps >= 2, endpoints inclusive).
std::vector<double> parse_p_spec(const std::string& spec);

/// Inclusive uniform grid of n points over [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

/// phi = pi/4, varphi = 0, p = 0.8, zeta in {0, pi/6, pi/4, pi/3, pi/2}.
/// Each quantity comes from its closed form and from the state definition.
Table cmd_table1();

/// phi = pi/4, varphi = 0, p = 0.5 at the eight tabulated (zeta_a, zeta_b).
Table cmd_table2();

/// Rows (p, zeta, c_ab, f_max, tau3) over p_values x grid_n zeta points.
Table cmd_scan_3q(const ScanConfig& cfg);

/// Thresholded fidelity along the GHZ-bound (phi = pi/4, dephasing) and
/// W-bound (phi = arccos(1/sqrt 3), amplitude damping) trajectories.
Table cmd_ghz_vs_w(const ScanConfig& cfg);

struct TriadRecord {
  double zeta_a = 0.0;
  double zeta_b = 0.0;
  double p = 0.0;
  double phi = 0.0;
  double varphi = 0.0;
  double c_ab = 0.0;
  double tau4 = 0.0;
  double f_max = 0.0;
  std::string family;  // ac/ac, dc/dc, ac/dc, dc/ac, twin, ac/gc, gc/ac, dc/gc, gc/dc, gc/gc
};

/// One record per (zeta_a, zeta_b, p) on a grid_n x grid_n inclusive grid
/// over [0, pi/2]^2, sorted by (zeta_a, zeta_b, p). Grid points are
/// evaluated on worker threads; the output does not depend on scheduling.
std::vector<TriadRecord> cmd_triads(const ScanConfig& cfg);

Table triads_table(const std::vector<TriadRecord>& records);

}  // namespace teleportality
