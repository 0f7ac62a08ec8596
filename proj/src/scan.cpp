#include "teleportality/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "teleportality/channels.hpp"
#include "teleportality/entanglement.hpp"
#include "teleportality/fidelity.hpp"

namespace teleportality {

namespace {

constexpr double kPi = std::numbers::pi;

// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads. Each
// index is visited exactly once; callers write results by index.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
}

std::string cell_text(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d, digits);
  return std::get<std::string>(c);
}

std::string triad_family(int i, int j, int last) {
  auto end = [last](int k) -> const char* { return k == 0 ? "ac" : (k == last ? "dc" : nullptr); };
  const char* a = end(i);
  const char* b = end(j);
  if (a && b) return std::string(a) + "/" + b;
  if (i == j) return "twin";
  if (a) return std::string(a) + "/gc";
  if (b) return std::string("gc/") + b;
  return "gc/gc";
}

}  // namespace

// ---------------------------------------------------------------------------
// Table output

std::size_t Table::column_index(std::string_view column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw ArgumentError("table has no column '" + std::string(column) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double Table::number(std::size_t row, std::string_view column) const {
  const auto& c = rows.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  throw ArgumentError("column '" + std::string(column) + "' is not numeric");
}

std::string format_number(double x, int digits) {
  if (x == 0.0) x = 0.0;  // print -0 as 0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c], 12);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* d = std::get_if<double>(&row[c])) {
        // Round-trip through the CSV representation so both formats carry
        // the same 12 significant digits.
        obj[t.columns[c]] = std::stod(format_number(*d, 12));
      } else {
        obj[t.columns[c]] = std::get<std::string>(row[c]);
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void write_text(std::ostream& os, const Table& t, int digits) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], cell_text(row[c], digits).size());
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cell_text(row[c], digits);
    os << '\n';
  }
}

void write_table(std::ostream& os, const Table& t, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_json(os, t);
  } else {
    write_csv(os, t);
  }
}

// ---------------------------------------------------------------------------
// Configuration

void ScanConfig::validate() const {
  if (grid_n < 2) throw ArgumentError("grid size must be at least 2");
  resource.validate();
  if (p_values.empty()) throw ArgumentError("no p values given");
  for (double p : p_values) ChannelParams{0.0, p}.validate();
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw ArgumentError("linspace: need at least 2 points");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  v.back() = hi;
  return v;
}

std::vector<double> parse_p_spec(const std::string& spec) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ArgumentError("cannot parse p specification '" + spec + "'");
    }
    if (used != s.size()) throw ArgumentError("cannot parse p specification '" + spec + "'");
    return x;
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) return {to_double(parts[0])};
  if (parts.size() != 3) throw ArgumentError("p specification must be a number or start:end:steps");
  const double steps = to_double(parts[2]);
  if (steps < 2 || steps != std::floor(steps)) throw ArgumentError("p range needs an integer steps >= 2");
  return linspace(to_double(parts[0]), to_double(parts[1]), static_cast<int>(steps));
}

// ---------------------------------------------------------------------------
// Tables

Table cmd_table1() {
  const ResourceParams rp{kPi / 4, 0.0};
  constexpr double p = 0.8;
  const std::array<std::pair<double, const char*>, 5> zetas{
      {{0.0, "0"}, {kPi / 6, "pi/6"}, {kPi / 4, "pi/4"}, {kPi / 3, "pi/3"}, {kPi / 2, "pi/2"}}};

  Table t{{"zeta", "c_ab", "f_max", "tau3", "c_ab_def", "f_max_def", "tau3_def", "max_discrepancy"}, {}};
  for (const auto& [zeta, label] : zetas) {
    const ChannelParams ch{zeta, p};
    const auto ks = gc_kraus(ch);
    const double c_closed = concurrence_resource_kraus(rp.e0(), ks.ops()[0], ks.ops()[1]);
    const double f_closed = f_gc_closed(rp, ch);
    const double tau_closed = three_tangle_kraus(rp.e0(), ks.ops()[0], ks.ops()[1]);

    const auto psi = evolve_3q(rp, ch);
    const auto rho = reduced_resource(psi);
    const double c_def = concurrence_mixed(rho);
    const double f_def = f_max_from_rho(rho).f_thresholded;
    const double tau_def = three_tangle_def(psi);

    const double disc = std::max({std::abs(c_closed - c_def), std::abs(f_closed - f_def), std::abs(tau_closed - tau_def)});
    t.rows.push_back({std::string(label), c_closed, f_closed, tau_closed, c_def, f_def, tau_def, disc});
  }
  return t;
}

Table cmd_table2() {
  const ResourceParams rp{kPi / 4, 0.0};
  constexpr double p = 0.5;
  struct Row {
    int na, da, nb, db;
  };
  constexpr std::array<Row, 8> rows{{{181, 500, 37, 500},
                                     {91, 250, 2, 25},
                                     {93, 250, 29, 250},
                                     {187, 500, 143, 1000},
                                     {187, 500, 19, 125},
                                     {369, 1000, 99, 500},
                                     {42, 125, 281, 1000},
                                     {167, 500, 71, 250}}};

  Table t{{"zeta_a_over_pi", "zeta_b_over_pi", "c_ab", "tau4", "f_max", "tau4_def", "f_max_kraus", "max_discrepancy"},
          {}};
  for (const auto& r : rows) {
    const ChannelParams ca{kPi * r.na / r.da, p};
    const ChannelParams cb{kPi * r.nb / r.db, p};
    const auto psi = evolve_4q(rp, ca, cb);
    const double c_ab = concurrence_mixed(reduced_resource(psi));
    const double tau4 = four_tangle_closed(rp, ca, cb);
    const double f = f_gcgc_closed(rp, ca, cb);
    const double tau4_def = four_tangle_def(psi);
    const double f_kraus = f_max_kraus(rp, tensor_channels(gc_kraus(ca), gc_kraus(cb))).f_thresholded;
    const double disc = std::max(std::abs(tau4 - tau4_def), std::abs(f - f_kraus));
    t.rows.push_back({std::to_string(r.na) + "/" + std::to_string(r.da), std::to_string(r.nb) + "/" + std::to_string(r.db),
                      c_ab, tau4, f, tau4_def, f_kraus, disc});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Sweeps

Table cmd_scan_3q(const ScanConfig& cfg) {
  cfg.validate();
  const auto zetas = linspace(0.0, kPi / 2, cfg.grid_n);
  const double e0 = cfg.resource.e0();
  Table t{{"p", "zeta", "c_ab", "f_max", "tau3"}, {}};
  for (double p : cfg.p_values) {
    for (double zeta : zetas) {
      const ChannelParams ch{zeta, p};
      const auto ks = gc_kraus(ch);
      t.rows.push_back({p, zeta, concurrence_resource_kraus(e0, ks.ops()[0], ks.ops()[1]), f_gc_closed(cfg.resource, ch),
                        three_tangle_kraus(e0, ks.ops()[0], ks.ops()[1])});
    }
  }
  return t;
}

Table cmd_ghz_vs_w(const ScanConfig& cfg) {
  cfg.validate();
  const ResourceParams ghz{kPi / 4, 0.0};
  const ResourceParams w{std::acos(1.0 / std::sqrt(3.0)), 0.0};
  Table t{{"p", "f_ghz", "f_w", "tau3_ghz", "tau3_w"}, {}};
  for (double p : cfg.p_values) {
    const ChannelParams dc{kPi / 2, p};
    const ChannelParams ac{0.0, p};
    const auto kd = gc_kraus(dc);
    const auto ka = gc_kraus(ac);
    t.rows.push_back({p, f_gc_closed(ghz, dc), f_gc_closed(w, ac), three_tangle_kraus(ghz.e0(), kd.ops()[0], kd.ops()[1]),
                      three_tangle_kraus(w.e0(), ka.ops()[0], ka.ops()[1])});
  }
  return t;
}

std::vector<TriadRecord> cmd_triads(const ScanConfig& cfg) {
  cfg.validate();
  const auto zetas = linspace(0.0, kPi / 2, cfg.grid_n);
  const std::size_t n = zetas.size();
  const std::size_t np = cfg.p_values.size();
  // Index layout (i, j, k) -> (i * n + j) * np + k is already sorted by
  // (zeta_a, zeta_b, p) as long as p_values is sorted.
  std::vector<double> ps = cfg.p_values;
  std::sort(ps.begin(), ps.end());

  std::vector<TriadRecord> out(n * n * np);
  parallel_for(out.size(), [&](std::size_t idx) {
    const std::size_t k = idx % np;
    const std::size_t j = (idx / np) % n;
    const std::size_t i = idx / (np * n);
    const ChannelParams ca{zetas[i], ps[k]};
    const ChannelParams cb{zetas[j], ps[k]};
    TriadRecord r;
    r.zeta_a = zetas[i];
    r.zeta_b = zetas[j];
    r.p = ps[k];
    r.phi = cfg.resource.phi;
    r.varphi = cfg.resource.varphi;
    r.c_ab = concurrence_mixed(reduced_resource(evolve_4q(cfg.resource, ca, cb)));
    r.tau4 = four_tangle_closed(cfg.resource, ca, cb);
    r.f_max = f_gcgc_closed(cfg.resource, ca, cb);
    r.family = triad_family(static_cast<int>(i), static_cast<int>(j), static_cast<int>(n) - 1);
    out[idx] = std::move(r);
  });
  return out;
}

Table triads_table(const std::vector<TriadRecord>& records) {
  Table t{{"zeta_a", "zeta_b", "p", "phi", "varphi", "c_ab", "tau4", "f_max", "family"}, {}};
  t.rows.reserve(records.size());
  for (const auto& r : records) {
    t.rows.push_back({r.zeta_a, r.zeta_b, r.p, r.phi, r.varphi, r.c_ab, r.tau4, r.f_max, r.family});
  }
  return t;
}

}  // namespace teleportality
