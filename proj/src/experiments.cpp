#include "voi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "voi/errors.hpp"

namespace voi::experiments {

namespace {

std::string fixed(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  // Keep "-0.000000" out of deterministic output.
  if (std::string_view(buf).find_first_not_of("-0.") == std::string_view::npos && buf[0] == '-')
    return std::string(buf + 1);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<double> gamma_grid(double gamma_min, double gamma_max, int steps, Spacing spacing) {
  constexpr double slack = 1e-12;
  if (!(gamma_min >= ahp::kSaatyMin * (1 - slack) && gamma_max <= ahp::kSaatyMax * (1 + slack)))
    throw DomainError("gamma range must lie within [1/9, 9]");
  if (!(gamma_min <= gamma_max)) throw DomainError("gamma_min exceeds gamma_max");
  if (steps < 2) throw DomainError("a sweep needs at least 2 steps");

  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double last = steps - 1;
  for (int i = 0; i < steps; ++i) {
    const double t = i / last;
    grid[i] = spacing == Spacing::Linear
                  ? gamma_min + i * (gamma_max - gamma_min) / last
                  : std::exp(std::log(gamma_min) + t * (std::log(gamma_max) - std::log(gamma_min)));
  }
  grid.front() = gamma_min;
  grid.back() = gamma_max;
  return grid;
}

std::vector<SweepRow> gamma_sweep(const VoiConfig& config, double gamma_min, double gamma_max,
                                  int steps, Spacing spacing) {
  if (!config.gamma_slot) throw DomainError("config has no gamma slot to sweep");
  std::vector<SweepRow> rows;
  for (double gamma : gamma_grid(gamma_min, gamma_max, steps, spacing)) {
    // Endpoints may sit a rounding error outside the Saaty bounds.
    const double clamped = std::clamp(gamma, ahp::kSaatyMin, ahp::kSaatyMax);
    const Assessment a = assess(config, clamped);
    rows.push_back({gamma, a.report.consistency_ratio, a.report.is_consistent, a.scores.weights});
  }
  return rows;
}

std::vector<GammaInterval> consistent_region(std::span<const SweepRow> rows) {
  std::vector<GammaInterval> out;
  bool open = false;
  for (const auto& row : rows) {
    if (row.is_consistent) {
      if (!open) out.push_back({row.gamma, row.gamma});
      out.back().hi = row.gamma;
      open = true;
    } else {
      open = false;
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const VoiConfig& config, std::span<const SweepRow> rows) {
  out << "gamma,cr,consistent";
  for (auto s : config.sources) out << ",voi_" << to_string(s);
  out << '\n';
  for (const auto& row : rows) {
    out << fixed(row.gamma) << ',' << fixed(row.cr) << ',' << (row.is_consistent ? 1 : 0);
    for (double s : row.scores) out << ',' << fixed(s);
    out << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("", "empty sweep CSV");
  const auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "gamma" || header[1] != "cr" ||
      header[2] != "consistent")
    throw ConfigError("", "unexpected sweep CSV header: " + line);
  const std::size_t sources = header.size() - 3;

  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size())
      throw ConfigError("line " + std::to_string(line_no), "wrong number of columns");
    try {
      SweepRow row;
      row.gamma = std::stod(fields[0]);
      row.cr = std::stod(fields[1]);
      row.is_consistent = fields[2] == "1";
      for (std::size_t s = 0; s < sources; ++s) row.scores.push_back(std::stod(fields[3 + s]));
      rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw ConfigError("line " + std::to_string(line_no), "unparseable number");
    }
  }
  return rows;
}

void write_metrics_csv(std::ostream& out, std::span<const SchedulerRun> runs) {
  out << "scheduler,slots,generated,delivered,dropped,residual,delivered_value,mean_age_ms,"
         "max_age_ms,bits_sent,utilization";
  for (std::size_t k = 0; k < kSourceKindCount; ++k)
    out << ",delivered_" << to_string(static_cast<SourceKind>(k));
  out << '\n';
  for (const auto& [scheduler, m] : runs) {
    out << to_string(scheduler) << ',' << m.slots_run << ',' << m.generated_count << ','
        << m.delivered_total << ',' << m.dropped_count << ',' << m.residual_count << ','
        << fixed(m.delivered_value) << ',' << fixed(m.mean_age_ms) << ',' << fixed(m.max_age_ms)
        << ',' << m.bits_sent << ',' << fixed(m.channel_utilization);
    for (auto c : m.delivered_count) out << ',' << c;
    out << '\n';
  }
}

std::string format_simulation_summary(const sim::ScenarioConfig& config,
                                      std::span<const SchedulerRun> runs) {
  std::ostringstream out;
  std::int64_t offered_bits = 0;
  for (std::int64_t slot = 0; slot < config.duration_slots; ++slot)
    for (const auto& g : config.generators)
      if (slot % g.period_slots == 0) offered_bits += g.size_bits;
  const double capacity =
      static_cast<double>(config.duration_slots) * static_cast<double>(config.channel_bits_per_slot);

  out << "scenario: " << config.duration_slots << " slots x " << fixed(config.slot_ms, 1)
      << " ms, " << config.channel_bits_per_slot << " bits/slot, gamma " << fixed(config.gamma, 4)
      << '\n';
  out << "offered load: " << (capacity > 0 ? fixed(offered_bits / capacity, 3) : "n/a")
      << " x capacity\n";
  for (const auto& [scheduler, m] : runs) {
    out << to_string(scheduler) << ": delivered_value=" << fixed(m.delivered_value)
        << " delivered=" << m.delivered_total << " dropped=" << m.dropped_count
        << " residual=" << m.residual_count << " mean_age_ms=" << fixed(m.mean_age_ms, 3)
        << " max_age_ms=" << fixed(m.max_age_ms, 3)
        << " utilization=" << fixed(m.channel_utilization, 4) << '\n';
  }
  return out.str();
}

std::string format_check_report(const VoiConfig& config, double gamma,
                                const Assessment& assessment) {
  std::ostringstream out;
  out << "application: " << to_string(config.application.kind) << '\n';
  if (config.gamma_slot) out << "gamma: " << fixed(gamma, 4) << '\n';
  out << "attribute weights:\n";
  for (std::size_t a = 0; a < config.attributes.size(); ++a)
    out << "  " << to_string(config.attributes[a]) << ' '
        << fixed(assessment.attribute_weights[a], 4) << '\n';
  const auto& r = assessment.report;
  out << "lambda_max=" << fixed(r.lambda_max, 4) << " CI=" << fixed(r.consistency_index, 4)
      << " CR=" << fixed(r.consistency_ratio, 4) << " threshold="
      << fixed(config.consistency_threshold, 4)
      << (r.is_consistent ? " consistent" : " inconsistent") << '\n';
  out << "source scores:\n";
  for (std::size_t s = 0; s < config.sources.size(); ++s)
    out << "  " << to_string(config.sources[s]) << ' ' << fixed(assessment.scores[s], 4) << '\n';
  return out.str();
}

}  // namespace voi::experiments
