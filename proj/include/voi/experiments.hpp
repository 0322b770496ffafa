#pragma once

// Gamma sweeps over an application config, consistent-region extraction,
// and the CSV / text renderings the CLI writes.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "voi/sim.hpp"
#include "voi/voi_model.hpp"

namespace voi::experiments {

struct SweepRow {
  double gamma = 0.0;
  double cr = 0.0;
  bool is_consistent = false;
  std::vector<double> scores;  // in config.sources order
};

enum class Spacing { Linear, Log };

// `steps` gamma values from gamma_min to gamma_max inclusive; both
// endpoints are hit exactly. Throws DomainError when the range leaves
// [1/9, 9], is reversed, or steps < 2.
std::vector<double> gamma_grid(double gamma_min, double gamma_max, int steps,
                               Spacing spacing = Spacing::Linear);

std::vector<SweepRow> gamma_sweep(const VoiConfig& config, double gamma_min, double gamma_max,
                                  int steps, Spacing spacing = Spacing::Linear);

struct GammaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Maximal runs of consistent rows, as [first gamma, last gamma] of each run.
std::vector<GammaInterval> consistent_region(std::span<const SweepRow> rows);

// gamma,cr,consistent,voi_<source>... with reals at 6 decimals and the
// consistent flag as 0/1.
void write_sweep_csv(std::ostream& out, const VoiConfig& config, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct SchedulerRun {
  sim::SchedulerKind scheduler;
  sim::SimMetrics metrics;
};

// scheduler,slots,generated,delivered,dropped,residual,delivered_value,
// mean_age_ms,max_age_ms,bits_sent,utilization,delivered_<source>...
void write_metrics_csv(std::ostream& out, std::span<const SchedulerRun> runs);

std::string format_simulation_summary(const sim::ScenarioConfig& config,
                                      std::span<const SchedulerRun> runs);

std::string format_check_report(const VoiConfig& config, double gamma,
                                const Assessment& assessment);

}  // namespace voi::experiments
