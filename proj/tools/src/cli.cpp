#include "kacgap/tools/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kacgap/error.hpp"
#include "kacgap/gapbounds.hpp"
#include "kacgap/montecarlo.hpp"
#include "kacgap/tools/io.hpp"
#include "kacgap/tools/verify.hpp"

namespace kacgap::tools {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  bool quick = false;
  bool json = false;
};

struct EigenArgs {
  int ell = -1;
  int ell_max = 0;
  int n_max = 300;
};

struct BoundsArgs {
  std::string sector;
  int ell = -1;
  std::string convention = "shifted";
  int block = 5;
  bool all_tilde = false;
};

struct SimulateArgs {
  int alpha = 2;
  std::int64_t replicas = 100'000;
  int bins = 100;
  std::string frames;
  std::string initial = "linear";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_frames(const std::string& s) {
  std::vector<double> f;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      f.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--frames: not a number: '" + item + "'");
    }
  }
  return f;
}

/// Writes to --out when given, otherwise to out.
void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write " + g.out);
  f << text;
}

int cmd_eigen(const Globals& g, const EigenArgs& a, std::ostream& out) {
  const int lo = a.ell >= 0 ? a.ell : 0;
  const int hi = a.ell >= 0 ? a.ell : a.ell_max;
  if (hi < lo || a.n_max < 0) throw UsageError("eigen: need ell >= 0, ell-max >= 0 and n-max >= 0");
  std::ostringstream os;
  write_csv(os, kappa_csv(lo, hi, a.n_max));
  emit(g, out, os.str());
  return kExitOk;
}

int cmd_bounds(const Globals& g, const BoundsArgs& a, std::ostream& out) {
  gapbounds::SectorBound s{};
  if (a.sector == "antisym") {
    s = gapbounds::antisym_sector();
  } else if (a.sector == "large") {
    gapbounds::LargeEllOptions opt;
    if (a.all_tilde) opt.offdiagonal = kspectrum::Majorant::Tilde;
    s = gapbounds::large_ell_bound(a.ell >= 0 ? a.ell : 70, opt);
  } else if (a.sector == "mid") {
    s = gapbounds::mid_ell_check();
  } else if (a.sector == "small") {
    if (a.ell < 0) throw UsageError("bounds --sector small requires --ell");
    gapbounds::SmallEllOptions opt;
    opt.convention = gapbounds::parse_convention(a.convention);
    opt.block = a.block;
    s = gapbounds::small_ell_bound(a.ell, opt);
  } else {
    throw UsageError("unknown sector: " + a.sector);
  }
  emit(g, out, to_json(s).dump(2) + "\n");
  return kExitOk;
}

int cmd_gap(const Globals& g, std::ostream& out) {
  const auto r = gapbounds::assemble_gap();
  emit(g, out, to_json(r).dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  auto cfg = montecarlo::SimConfig::defaults(a.alpha);
  cfg.replicas = a.replicas;
  cfg.seed = g.seed;
  cfg.bins = a.bins;
  cfg.initial = montecarlo::parse_initial_density(a.initial);
  if (!a.frames.empty()) cfg.frames = parse_frames(a.frames);
  cfg.validate();
  const auto rep = montecarlo::run_simulation(cfg);
  const std::string dir = g.out.empty() ? "simulation" : g.out;
  write_simulation(dir, rep);
  out << simulation_summary(rep).dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Globals& g, std::ostream& out) {
  VerifyOptions opt;
  opt.quick = g.quick;
  opt.seed = g.seed;
  const auto report = verify_all(opt);
  std::ostringstream os;
  if (g.json) {
    os << to_json(report).dump(2) << '\n';
  } else {
    print_report(os, report);
  }
  emit(g, out, os.str());
  return report.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral gap bounds and Monte Carlo for the three-particle conjugate Kac process", "kacgap"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed for statistical work")->capture_default_str();
  app.add_option("--out", g.out, "Output file (eigen, bounds, gap, verify) or directory (simulate)");
  app.add_flag("--quick", g.quick, "verify: 1e4 replicas with widened tolerances");
  app.add_flag("--json", g.json, "verify: JSON instead of a table");

  EigenArgs ea;
  auto* eigen = app.add_subcommand("eigen", "kappa table as CSV (n,ell,kappa,kappa_hat,kappa_tilde)");
  eigen->add_option("--ell", ea.ell, "single ell")->check(CLI::NonNegativeNumber);
  eigen->add_option("--ell-max", ea.ell_max, "ells 0..ell-max when --ell is absent")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eigen->add_option("--n-max", ea.n_max, "largest n")->check(CLI::NonNegativeNumber)->capture_default_str();

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "one sector bound as JSON");
  bounds->add_option("--sector", ba.sector, "sector")
      ->required()
      ->check(CLI::IsMember({"antisym", "large", "mid", "small"}));
  bounds->add_option("--ell", ba.ell, "ell (large: default 70; small: 0..5)");
  bounds->add_option("--convention", ba.convention, "small ell index convention")
      ->check(CLI::IsMember({"shifted", "aligned"}))
      ->capture_default_str();
  bounds->add_option("--block", ba.block, "small ell upper block size")->capture_default_str();
  bounds->add_flag("--all-tilde", ba.all_tilde, "large ell: kappa~ in both sequences");

  app.add_subcommand("gap", "assemble every sector bound and print the gap report as JSON");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo entropy decay; writes CSV/JSON into --out");
  sim->add_option("--alpha", sa.alpha, "0 or 2")->check(CLI::IsMember({0, 2}))->capture_default_str();
  sim->add_option("--replicas", sa.replicas, "replica count")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--bins", sa.bins, "histogram bins")->check(CLI::Range(10, 1'000'000))->capture_default_str();
  sim->add_option("--frames", sa.frames, "comma-separated frame times (default per alpha)");
  sim->add_option("--initial", sa.initial, "initial radial density")
      ->check(CLI::IsMember({"linear", "equilibrium"}))
      ->capture_default_str();

  app.add_subcommand("verify", "replay every reference check and print a pass/fail table");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "eigen") return cmd_eigen(g, ea, out);
    if (name == "bounds") return cmd_bounds(g, ba, out);
    if (name == "gap") return cmd_gap(g, out);
    if (name == "simulate") return cmd_simulate(g, sa, out);
    return cmd_verify(g, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace kacgap::tools
