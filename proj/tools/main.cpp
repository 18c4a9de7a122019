// qsl: command-line front end for the speed-limit library.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/bounds.hpp"
#include "qsl/composite.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/error.hpp"
#include "qsl/io.hpp"
#include "suites.hpp"

namespace {

using nlohmann::json;
using qsl::Table;

constexpr int kExitViolation = 1;
constexpr int kExitIncompatible = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t eps_resolution = 101;
  std::vector<double> grid_ladder = qsl::AlphaGridSpec{}.theta_spacings;
  std::string format = "csv";
  std::string units = "natural";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& c) {
  if (c.eps_resolution < 2) throw UsageError("--eps-resolution must be >= 2");
  if (c.grid_ladder.size() < 3) throw UsageError("grid ladder needs at least three spacings");
  for (std::size_t i = 1; i < c.grid_ladder.size(); ++i) {
    if (!(c.grid_ladder[i] < c.grid_ladder[i - 1])) throw UsageError("grid ladder must be strictly decreasing");
  }
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.units != "natural" && c.units != "pi_hbar_over_2E") {
    throw UsageError("--units must be natural or pi_hbar_over_2E");
  }
}

void load_config_file(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  json j;
  try {
    in >> j;
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("eps_resolution")) c.eps_resolution = j.at("eps_resolution").get<std::size_t>();
    if (j.contains("grid_ladder")) c.grid_ladder = j.at("grid_ladder").get<std::vector<double>>();
    if (j.contains("output_format")) c.format = j.at("output_format").get<std::string>();
    if (j.contains("units")) c.units = j.at("units").get<std::string>();
  } catch (const json::exception& e) {
    throw UsageError("bad config " + path + ": " + e.what());
  }
}

// Flags given on the command line; unset ones fall back to the config file.
struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  std::size_t eps_resolution = 0;
  std::string format;
  std::string units;
  std::string out;
};

RunConfig resolve(const CLI::App& app, const Flags& f, const std::string& default_format) {
  RunConfig c;
  c.format = default_format;
  bool seeded = false;
  if (!f.config.empty()) {
    load_config_file(f.config, c);
    std::ifstream in(f.config);
    seeded = json::parse(in, nullptr, false).contains("seed");
  }
  if (app.count("--seed") > 0) {
    c.seed = f.seed;
    seeded = true;
  }
  if (!seeded) {
    if (const char* env = std::getenv("QSL_SEED")) {
      try {
        c.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw UsageError("QSL_SEED is not an unsigned integer");
      }
    }
  }
  if (app.count("--eps-resolution") > 0) c.eps_resolution = f.eps_resolution;
  if (app.count("--format") > 0) c.format = f.format;
  if (app.count("--units") > 0) c.units = f.units;
  validate(c);
  return c;
}

void emit(const Table& t, const RunConfig& c, const std::string& out) {
  std::ostringstream ss;
  if (c.format == "json") {
    t.write_json(ss);
  } else {
    t.write_csv(ss);
  }
  if (out.empty() || out == "-") {
    std::cout << ss.str();
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << ss.str();
}

double time_unit(const RunConfig& c, double e) {
  return c.units == "natural" ? 1.0 : std::numbers::pi / (2.0 * e);
}

int cmd_bounds(const RunConfig& c, const std::string& out) {
  qsl::AlphaGridSpec spec;
  spec.theta_spacings = c.grid_ladder;
  spec.seed = c.seed;
  const qsl::AlphaLowerSolver solver(spec);
  Table t({"eps", "alpha_lower", "alpha_err", "alpha_upper", "beta", "beta_sq"});
  std::size_t incompatible = 0;
  for (std::size_t i = 0; i < c.eps_resolution; ++i) {
    const double eps = i + 1 == c.eps_resolution ? 1.0 : static_cast<double>(i) / (c.eps_resolution - 1);
    const qsl::AlphaEstimate a = qsl::alpha(eps, solver);
    if (!a.compatible) {
      ++incompatible;
      std::cerr << "incompatible alpha estimates at eps=" << qsl::format_number(eps) << "\n";
    }
    const double b = qsl::beta(eps);
    t.add_row({eps, a.lower.fit.value_at_zero, a.lower.fit.error_bar, a.upper, b, b * b});
  }
  emit(t, c, out);
  return incompatible == 0 ? 0 : kExitIncompatible;
}

int cmd_forbid(const RunConfig& c, const std::string& out, double e, double de, double xi, double eps,
               std::size_t steps) {
  if (!(e > 0.0) || !(de > 0.0)) throw UsageError("--e and --de must be positive");
  if (!(xi > 0.0 && xi < 1.0)) throw UsageError("--xi must lie in (0, 1)");
  if (!(eps >= 0.0 && eps < 1.0)) throw UsageError("--eps must lie in [0, 1)");
  if (steps < 1) throw UsageError("--steps must be >= 1");

  // Omega_xi with the requested mean energy: E = xi^2 E0
  const qsl::PureState omega = qsl::TwoLevelState{xi, e / (xi * xi)}.state();
  const double t0 = qsl::orthogonality_time(e, de);
  const std::optional<double> touch = qsl::time_to_fidelity(omega, eps, t0);

  std::vector<double> times;
  for (std::size_t k = 0; k <= steps; ++k) times.push_back(t0 * static_cast<double>(k) / steps);
  if (touch) times.push_back(*touch);
  std::sort(times.begin(), times.end());

  const double unit = time_unit(c, e);
  Table t({"t", "floor_alpha", "floor_beta", "floor", "P_omega", "touch"});
  for (double tt : times) {
    const qsl::FloorParts p = qsl::forbidden_floor_parts(std::min(tt, t0), e, de);
    const bool mark = touch && tt == *touch;
    t.add_row({tt / unit, p.alpha_part, p.beta_part, p.floor, qsl::survival_probability(omega, tt),
               mark ? 1.0 : 0.0});
  }
  emit(t, c, out);
  if (touch) {
    std::cerr << "P_omega reaches " << qsl::format_number(eps) << " at t=" << qsl::format_number(*touch / unit)
              << " (" << c.units << ")\n";
  } else {
    std::cerr << "P_omega does not reach " << qsl::format_number(eps) << " before T0\n";
  }
  return 0;
}

int cmd_ratio(const RunConfig& c, const std::string& out, std::size_t m) {
  if (m < 2) throw UsageError("--m must be >= 2");
  Table t({"eps", "r_lower", "branch"});
  for (const qsl::RatioPoint& p : qsl::ratio_curve(m, c.eps_resolution).points) {
    t.add_row({p.eps, p.r_lower, std::string(qsl::to_string(p.branch))});
  }
  emit(t, c, out);
  return 0;
}

int cmd_verify(const RunConfig& c, const std::string& out, const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = qsl::cli::kSuiteNames;
  } else if (std::find(qsl::cli::kSuiteNames.begin(), qsl::cli::kSuiteNames.end(), suite) !=
             qsl::cli::kSuiteNames.end()) {
    names = {suite};
  } else {
    throw UsageError("unknown suite " + suite);
  }

  bool ok = true;
  json report = {{"seed", c.seed}, {"suites", json::array()}};
  Table t({"suite", "check", "value", "threshold", "passed"});
  for (const std::string& n : names) {
    const qsl::cli::SuiteReport r = qsl::cli::run_suite(n, c.seed);
    ok = ok && r.passed();
    json checks = json::array();
    for (const qsl::cli::Check& ch : r.checks) {
      checks.push_back({{"name", ch.name},
                        {"value", ch.value},
                        {"threshold", ch.threshold},
                        {"relation", ch.upper_bound ? "<=" : ">="},
                        {"passed", ch.passed}});
      t.add_row({n, ch.name, ch.value, ch.threshold, std::string(ch.passed ? "true" : "false")});
    }
    report["suites"].push_back({{"name", n}, {"passed", r.passed()}, {"checks", checks}});
  }
  report["passed"] = ok;

  if (c.format == "csv") {
    emit(t, c, out);
  } else {
    const std::string text = report.dump(2) + "\n";
    if (out.empty() || out == "-") {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw UsageError("cannot write " + out);
      f << text;
    }
  }
  return ok ? 0 : kExitViolation;
}

int cmd_evolve(const RunConfig& c, const std::string& out, const std::string& path, double t_max,
               std::size_t steps) {
  if (!(t_max > 0.0)) throw UsageError("--t-max must be positive");
  if (steps < 1) throw UsageError("--steps must be >= 1");
  const qsl::StateInput input = qsl::parse_state_file(path);

  qsl::Trajectory traj;
  std::string column = "P";
  double e = 0.0;
  if (const auto* rho = std::get_if<qsl::DensityMatrix>(&input)) {
    traj = qsl::fidelity_trajectory(*rho, t_max, steps);
    column = "F";
    e = rho->mean_energy();
  } else {
    const qsl::PureState& s = std::holds_alternative<qsl::PureState>(input)
                                  ? std::get<qsl::PureState>(input)
                                  : std::get<qsl::CompositeState>(input).joint();
    traj = qsl::survival_trajectory(s, t_max, steps);
    e = qsl::mean_energy(s);
  }
  if (c.units != "natural" && !(e > 0.0)) throw UsageError("pi_hbar_over_2E units need E > 0");
  const double unit = time_unit(c, e);
  Table t({"t", column});
  for (std::size_t i = 0; i < traj.times.size(); ++i) t.add_row({traj.times[i] / unit, traj.values[i]});
  emit(t, c, out);
  return 0;
}

int exit_code_for(qsl::Errc code) {
  switch (code) {
    case qsl::Errc::Parse:
    case qsl::Errc::InvalidState:
    case qsl::Errc::BadProbabilities:
    case qsl::Errc::SpectrumMismatch:
    case qsl::Errc::NotHermitian:
    case qsl::Errc::NotPSD:
    case qsl::Errc::TooLarge:
    case qsl::Errc::NonFinite:
      return kExitData;
    case qsl::Errc::OutOfRange:
    case qsl::Errc::Undefined:
      return kExitUsage;
    default:
      return kExitIncompatible;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum speed limit bounds, trajectories and property checks.\n"
               "Times are in units of hbar = 1 unless --units pi_hbar_over_2E is given."};
  app.require_subcommand(1);

  Flags flags;
  app.add_option("--config", flags.config, "JSON file with seed, eps_resolution, grid_ladder, "
                                            "output_format, units; flags override it");
  app.add_option("--seed", flags.seed, "Base seed for every random grid and instance (default 1, "
                                       "or $QSL_SEED)");
  app.add_option("--eps-resolution", flags.eps_resolution, "Number of eps points in [0, 1] (default 101)");
  app.add_option("--out", flags.out, "Output file (default stdout)");
  app.add_option("--format", flags.format, "csv or json (default csv)");
  app.add_option("--units", flags.units, "natural or pi_hbar_over_2E (default natural)");

  auto* bounds = app.add_subcommand(
      "bounds", "Bound table: alpha lower estimate with error bar, alpha upper, beta, beta^2");

  double e = 1.0;
  double de = 1.73;
  double xi = 0.5;
  double eps = 0.30;
  std::size_t steps = 400;
  auto* forbid = app.add_subcommand(
      "forbid", "Forbidden-region floor and the Omega_xi trajectory with its eps crossing");
  forbid->add_option("--e", e, "Mean energy E (default 1)");
  forbid->add_option("--de", de, "Energy spread dE (default 1.73)");
  forbid->add_option("--xi", xi, "Omega_xi amplitude (default 0.5)");
  forbid->add_option("--eps", eps, "eps whose crossing is marked (default 0.30)");
  forbid->add_option("--steps", steps, "Time steps over [0, T0] (default 400)");

  std::size_t m = 5;
  auto* ratio = app.add_subcommand("ratio", "Slowdown ratio lower bound of homogeneous "
                                            "separable states (default M = 5)");
  ratio->add_option("--m", m, "Number of subsystems (default 5)");

  std::string suite = "all";
  auto* verify = app.add_subcommand(
      "verify", "Property suites: forbidden, derivative, convexity, subadditivity, "
                "mixture, composite, all. Exit 1 on any violation. Report is JSON unless --format csv");
  verify->add_option("suite", suite, "Suite name (default all)");

  std::string state_path;
  double t_max = 10.0;
  std::size_t evolve_steps = 400;
  auto* evolve = app.add_subcommand("evolve", "Trajectory t,P of a pure or composite state file, or t,F "
                                              "(Uhlmann fidelity) for an ensemble or density matrix");
  evolve->add_option("state", state_path, "State JSON file")->required();
  evolve->add_option("--t-max", t_max, "Final time (default 10)");
  evolve->add_option("--steps", evolve_steps, "Number of steps (default 400)");

  for (CLI::App* sub : {bounds, forbid, ratio, verify, evolve}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    // verify prints JSON unless csv is asked for explicitly
    const RunConfig cfg = resolve(app, flags, verify->parsed() ? "json" : "csv");
    if (bounds->parsed()) return cmd_bounds(cfg, flags.out);
    if (forbid->parsed()) return cmd_forbid(cfg, flags.out, e, de, xi, eps, steps);
    if (ratio->parsed()) return cmd_ratio(cfg, flags.out, m);
    if (verify->parsed()) return cmd_verify(cfg, flags.out, suite);
    return cmd_evolve(cfg, flags.out, state_path, t_max, evolve_steps);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const qsl::Error& err) {
    std::cerr << err.what() << "\n";
    return exit_code_for(err.code());
  }
}
