#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "voi/config_io.hpp"
#include "voi/errors.hpp"
#include "voi/experiments.hpp"

namespace voi::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("", "cannot write '" + path + "'");
  return file;
}

struct SweepArgs {
  std::string config;
  double gamma_min = ahp::kSaatyMin;
  double gamma_max = ahp::kSaatyMax;
  int steps = 1000;
  std::string out;
  bool log_spacing = false;
};

struct SimulateArgs {
  std::string scenario;
  std::string out;
  std::string log;
  std::string scheduler = "both";
};

struct CheckArgs {
  std::string config;
  std::optional<double> gamma;
};

int do_sweep(const SweepArgs& a, std::ostream& out) {
  const VoiConfig config = io::load_voi_config(a.config);
  const auto rows = experiments::gamma_sweep(
      config, a.gamma_min, a.gamma_max, a.steps,
      a.log_spacing ? experiments::Spacing::Log : experiments::Spacing::Linear);

  std::ostream* summary = &out;
  if (a.out.empty()) {
    experiments::write_sweep_csv(out, config, rows);
    summary = &std::cerr;
  } else {
    auto file = open_output(a.out);
    experiments::write_sweep_csv(file, config, rows);
  }
  const auto region = experiments::consistent_region(rows);
  char buf[128];
  *summary << rows.size() << " rows, consistent region:";
  if (region.empty()) *summary << " none";
  for (const auto& r : region) {
    std::snprintf(buf, sizeof buf, " [%.6f, %.6f]", r.lo, r.hi);
    *summary << buf;
  }
  *summary << '\n';
  return kExitOk;
}

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  const sim::ScenarioConfig scenario = io::load_scenario(a.scenario);
  std::vector<sim::SchedulerKind> kinds;
  if (a.scheduler == "voi" || a.scheduler == "both") kinds.push_back(sim::SchedulerKind::Voi);
  if (a.scheduler == "fifo" || a.scheduler == "both") kinds.push_back(sim::SchedulerKind::Fifo);

  std::vector<experiments::SchedulerRun> runs;
  for (const auto kind : kinds) {
    sim::Simulator simulator(scenario, kind);
    runs.push_back({kind, simulator.run()});
    // The transmission log follows the first (VoI, when present) scheduler.
    if (!a.log.empty() && runs.size() == 1) {
      auto file = open_output(a.log);
      sim::write_transmission_log(file, simulator.log());
    }
  }
  if (!a.out.empty()) {
    auto file = open_output(a.out);
    experiments::write_metrics_csv(file, runs);
  }
  out << experiments::format_simulation_summary(scenario, runs);
  if (runs.size() == 2) {
    const double gain = runs[0].metrics.delivered_value - runs[1].metrics.delivered_value;
    char buf[96];
    std::snprintf(buf, sizeof buf, "voi - fifo delivered_value: %+.6f\n", gain);
    out << buf;
  }
  return kExitOk;
}

int do_check(const CheckArgs& a, std::ostream& out) {
  const VoiConfig config = io::load_voi_config(a.config);
  double gamma = a.gamma.value_or(config.default_gamma.value_or(1.0));
  if (config.gamma_slot && !a.gamma && !config.default_gamma)
    throw ConfigError("gamma", "config has a gamma slot; pass --gamma or set \"gamma\"");
  const Assessment assessment = assess(config, gamma);
  out << experiments::format_check_report(config, gamma, assessment);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Value-of-information assessment and dissemination experiments", "voi"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Sweep gamma and emit scores plus consistency");
  sweep->add_option("--config", sweep_args.config, "Application config (JSON)")->required();
  sweep->add_option("--gamma-min", sweep_args.gamma_min, "Lower gamma (default 1/9)");
  sweep->add_option("--gamma-max", sweep_args.gamma_max, "Upper gamma (default 9)");
  sweep->add_option("--steps", sweep_args.steps, "Number of gamma samples")->capture_default_str();
  sweep->add_option("--out", sweep_args.out, "CSV output path (stdout if omitted)");
  sweep->add_flag("--log-spacing", sweep_args.log_spacing, "Space gamma samples logarithmically");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a dissemination scenario");
  simulate->add_option("--scenario", sim_args.scenario, "Scenario file (JSON)")->required();
  simulate->add_option("--out", sim_args.out, "Metrics CSV output path");
  simulate->add_option("--log", sim_args.log, "Per-transmission CSV log path");
  simulate->add_option("--scheduler", sim_args.scheduler, "voi, fifo or both")
      ->check(CLI::IsMember({"voi", "fifo", "both"}))
      ->capture_default_str();

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Validate a config and print its consistency report");
  check->add_option("--config", check_args.config, "Application config (JSON)")->required();
  check->add_option("--gamma", check_args.gamma, "Gamma to substitute into the matrix");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*sweep) return do_sweep(sweep_args, out);
    if (*simulate) return do_simulate(sim_args, out);
    if (*check) return do_check(check_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitConfig;
}

}  // namespace voi::cli
