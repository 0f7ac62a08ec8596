// teleportality: reproduce the fidelity/entanglement tables, emit sweep data
// and run the oracle suite.
//
// Exit status: 0 success, 1 verification failure, 2 bad arguments or an
// unusable output path.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include "teleportality/linalg.hpp"
#include "teleportality/scan.hpp"
#include "teleportality/verify.hpp"

namespace tp = teleportality;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CliArgs {
  double phi_over_pi = 0.25;
  double varphi_over_pi = 0.0;
  std::optional<std::string> p_spec;
  int grid = 128;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::uint64_t seed = tp::VerifyOptions{}.seed;
  std::size_t samples = 100000;
  bool corrupt_tolerance = false;
};

tp::ScanConfig to_config(const CliArgs& a, const std::string& default_p) {
  tp::ScanConfig cfg;
  cfg.grid_n = a.grid;
  cfg.resource = {a.phi_over_pi * std::numbers::pi, a.varphi_over_pi * std::numbers::pi};
  cfg.p_values = tp::parse_p_spec(a.p_spec.value_or(default_p));
  cfg.format = a.format == "json" ? tp::OutputFormat::Json : tp::OutputFormat::Csv;
  cfg.out = a.out;
  cfg.seed = a.seed;
  cfg.samples = a.samples;
  cfg.validate();
  return cfg;
}

// Runs `emit` against the --out file or stdout.
void with_output(const std::optional<std::string>& path, const std::function<void(std::ostream&)>& emit) {
  if (!path) {
    emit(std::cout);
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw tp::ArgumentError("cannot open output file '" + *path + "'");
  emit(f);
  f.flush();
  if (!f) throw tp::ArgumentError("write to '" + *path + "' failed");
}

// Tables print as aligned text unless a machine format or file was asked for.
void emit_table(const CliArgs& a, const tp::Table& t) {
  with_output(a.out, [&](std::ostream& os) {
    if (!a.format && !a.out) {
      tp::write_text(os, t);
    } else {
      tp::write_table(os, t, a.format == "json" ? tp::OutputFormat::Json : tp::OutputFormat::Csv);
    }
  });
}

int run(const std::string& command, const CliArgs& a) {
  if (command == "table1") {
    emit_table(a, tp::cmd_table1());
  } else if (command == "table2") {
    emit_table(a, tp::cmd_table2());
  } else if (command == "scan-3q") {
    const auto cfg = to_config(a, "0:1:11");
    with_output(cfg.out, [&](std::ostream& os) { tp::write_table(os, tp::cmd_scan_3q(cfg), cfg.format); });
  } else if (command == "ghz-vs-w") {
    const auto cfg = to_config(a, "0:1:101");
    with_output(cfg.out, [&](std::ostream& os) { tp::write_table(os, tp::cmd_ghz_vs_w(cfg), cfg.format); });
  } else if (command == "triads") {
    const auto cfg = to_config(a, "0.5");
    const auto table = tp::triads_table(tp::cmd_triads(cfg));
    with_output(cfg.out, [&](std::ostream& os) { tp::write_table(os, table, cfg.format); });
  } else if (command == "verify") {
    if (a.samples < 1000) throw tp::ArgumentError("--samples must be at least 1000");
    tp::VerifyOptions opt;
    opt.seed = a.seed;
    opt.mc_samples = a.samples;
    opt.corrupt_tolerance = a.corrupt_tolerance;
    const auto results = tp::run_verify(opt);
    with_output(a.out, [&](std::ostream& os) {
      os << "seed " << opt.seed << ", " << opt.mc_samples << " Monte-Carlo samples\n";
      tp::write_report(os, results);
    });
    return tp::all_passed(results) ? kExitOk : kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation fidelity and multipartite entanglement under generalized noisy channels"};
  app.require_subcommand(1);
  app.fallthrough();

  CliArgs a;
  app.add_option("--phi", a.phi_over_pi, "Resource angle phi as a multiple of pi (default 0.25)");
  app.add_option("--varphi", a.varphi_over_pi, "Resource phase varphi as a multiple of pi (default 0)");
  app.add_option("--p", a.p_spec, "Evolution parameter: a value or start:end:steps");
  app.add_option("--grid", a.grid, "Points per zeta axis (default 128)");
  app.add_option("--out", a.out, "Output file (default stdout)");
  app.add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", a.seed, "Seed for random draws");
  app.add_option("--samples", a.samples, "Monte-Carlo samples per configuration");
  app.add_flag("--corrupt-tolerance", a.corrupt_tolerance, "Self-test: make every verify tolerance fail")
      ->group("");

  const std::map<std::string, std::string> commands{
      {"table1", "Single channel on qubit B: phi=pi/4, varphi=0, p=0.8, five zeta values"},
      {"table2", "Channels on both qubits: phi=pi/4, varphi=0, p=0.5, eight (zeta_a, zeta_b) pairs"},
      {"scan-3q", "C_AB, fidelity and 3-tangle over zeta for each p"},
      {"ghz-vs-w", "Fidelity along the GHZ-bound and W-bound trajectories"},
      {"triads", "(C_AB, 4-tangle, fidelity) over a grid x grid channel-pair grid"},
      {"verify", "Run the oracle suite; exit 1 on any failure"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return run(chosen, a);
  } catch (const tp::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tp::SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tp::UnsupportedRegimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
