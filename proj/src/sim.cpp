#include "voi/sim.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <random>

#include "voi/errors.hpp"

namespace voi::sim {

namespace {

// Uniform in [0, 1) from the top 53 bits; std distributions are not
// reproducible across standard libraries.
double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::uint64_t mix(std::uint64_t seed, std::uint64_t slot, std::uint64_t generator) {
  std::uint64_t z = seed ^ (slot * 0x9E3779B97F4A7C15ULL) ^ (generator * 0xD1B54A32D192ED03ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

void validate_scenario(const ScenarioConfig& config) {
  if (config.duration_slots < 0) throw ConfigError("duration_slots", "must be >= 0");
  if (!(config.slot_ms > 0.0)) throw ConfigError("slot_ms", "must be positive");
  if (config.channel_bits_per_slot <= 0)
    throw ConfigError("channel_bits_per_slot", "must be positive");
  if (!(config.gamma >= ahp::kSaatyMin && config.gamma <= ahp::kSaatyMax))
    throw ConfigError("gamma", "must lie in [1/9, 9]");
  try {
    validate_config(config.voi_config);
  } catch (const ConfigError& e) {
    throw ConfigError(e.field().empty() ? "voi_config" : "voi_config/" + e.field(), e.detail());
  }
  const auto& sources = config.voi_config.sources;
  for (std::size_t g = 0; g < config.generators.size(); ++g) {
    const auto& gen = config.generators[g];
    const std::string field = "generators/" + std::to_string(g);
    if (gen.period_slots < 1) throw ConfigError(field + "/period_slots", "must be >= 1");
    if (gen.size_bits <= 0) throw ConfigError(field + "/size_bits", "must be positive");
    if (!(gen.quality >= 0.0 && gen.quality <= 1.0))
      throw ConfigError(field + "/quality", "must lie in [0, 1]");
    if (!(gen.position_jitter_m >= 0.0))
      throw ConfigError(field + "/position_jitter_m", "must be >= 0");
    if (std::find(sources.begin(), sources.end(), gen.source) == sources.end())
      throw ConfigError(field + "/source",
                        std::string(to_string(gen.source)) + " is not a source of voi_config");
  }
}

std::string_view to_string(SchedulerKind kind) {
  return kind == SchedulerKind::Voi ? "voi" : "fifo";
}

bool value_order(const ScoredMessage& a, const ScoredMessage& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.message.meta.generated_at != b.message.meta.generated_at)
    return a.message.meta.generated_at < b.message.meta.generated_at;
  return a.message.id < b.message.id;
}

bool fifo_order(const ScoredMessage& a, const ScoredMessage& b) {
  if (a.message.meta.generated_at != b.message.meta.generated_at)
    return a.message.meta.generated_at < b.message.meta.generated_at;
  return a.message.id < b.message.id;
}

std::vector<ScoredMessage> score(std::span<const Message> queue, TimeMs now,
                                 const ScenarioConfig& config) {
  std::vector<ScoredMessage> out;
  out.reserve(queue.size());
  for (const auto& m : queue)
    out.push_back({m, effective_voi(m.base_voi, m.meta, now, config.receiver_position,
                                    config.voi_config.decay)});
  return out;
}

std::vector<ScoredMessage> schedule(std::span<const Message> queue, TimeMs now,
                                    const ScenarioConfig& config) {
  return order_queue(queue, now, config, SchedulerKind::Voi);
}

std::vector<ScoredMessage> order_queue(std::span<const Message> queue, TimeMs now,
                                       const ScenarioConfig& config, SchedulerKind scheduler) {
  auto scored = score(queue, now, config);
  std::sort(scored.begin(), scored.end(),
            scheduler == SchedulerKind::Voi ? value_order : fifo_order);
  return scored;
}

std::vector<std::size_t> select_for_transmission(std::span<const ScoredMessage> ordered,
                                                 std::int64_t budget_bits) {
  std::vector<std::size_t> picked;
  std::int64_t remaining = budget_bits;
  for (std::size_t i = 0; i < ordered.size() && remaining > 0; ++i) {
    const std::int64_t size = ordered[i].message.meta.size_bits;
    if (size <= remaining) {
      picked.push_back(i);
      remaining -= size;
    }
  }
  return picked;
}

std::array<double, kSourceKindCount> base_scores(const ScenarioConfig& config) {
  const auto& vc = config.voi_config;
  const Assessment assessment = assess(vc, config.gamma);
  std::array<double, kSourceKindCount> out{};
  for (std::size_t i = 0; i < vc.sources.size(); ++i)
    out[static_cast<std::size_t>(vc.sources[i])] = assessment.scores[i];
  return out;
}

std::vector<Message> generate(const ScenarioConfig& config, std::int64_t slot) {
  return generate(config, slot, base_scores(config));
}

std::vector<Message> generate(const ScenarioConfig& config, std::int64_t slot,
                              const std::array<double, kSourceKindCount>& scores) {
  std::vector<Message> out;
  const auto count = static_cast<std::int64_t>(config.generators.size());
  for (std::int64_t g = 0; g < count; ++g) {
    const auto& gen = config.generators[static_cast<std::size_t>(g)];
    if (slot % gen.period_slots != 0) continue;

    Message m;
    m.id = slot * count + g;
    m.meta.source = gen.source;
    m.meta.generated_at = static_cast<double>(slot) * config.slot_ms;
    m.meta.origin = gen.position;
    if (gen.position_jitter_m > 0.0) {
      std::mt19937_64 rng(mix(config.rng_seed, static_cast<std::uint64_t>(slot),
                              static_cast<std::uint64_t>(g)));
      m.meta.origin.x += (2.0 * unit_real(rng) - 1.0) * gen.position_jitter_m;
      m.meta.origin.y += (2.0 * unit_real(rng) - 1.0) * gen.position_jitter_m;
    }
    m.meta.size_bits = gen.size_bits;
    m.meta.quality = gen.quality;
    m.meta.urgency_level = gen.urgency_level;
    m.base_voi = scores[static_cast<std::size_t>(gen.source)];
    out.push_back(m);
  }
  return out;
}

Simulator::Simulator(ScenarioConfig config, SchedulerKind scheduler)
    : config_(std::move(config)), scheduler_(scheduler) {
  validate_scenario(config_);
  scores_ = base_scores(config_);
}

SlotReport Simulator::step() {
  if (done()) throw DomainError("simulation already finished");
  SlotReport report;
  report.slot = slot_;
  report.now = static_cast<double>(slot_) * config_.slot_ms;

  auto fresh = generate(config_, slot_, scores_);
  report.generated = static_cast<std::int64_t>(fresh.size());
  metrics_.generated_count += report.generated;
  queue_.insert(queue_.end(), fresh.begin(), fresh.end());

  auto ranked = order_queue(queue_, report.now, config_, scheduler_);
  std::erase_if(ranked, [&](const ScoredMessage& s) {
    if (s.value > 0.0) return false;
    ++report.dropped;
    return true;
  });
  metrics_.dropped_count += report.dropped;

  const auto picked = select_for_transmission(ranked, config_.channel_bits_per_slot);
  std::vector<bool> sent(ranked.size(), false);
  for (std::size_t i : picked) {
    sent[i] = true;
    const auto& s = ranked[i];
    const double age = report.now - s.message.meta.generated_at;
    report.bits_sent += s.message.meta.size_bits;
    report.value_sent += s.value;
    report.transmitted.push_back(s);
    log_.push_back({slot_, s.message.id, s.message.meta.source, s.value,
                    s.message.meta.size_bits});
    metrics_.delivered_count[static_cast<std::size_t>(s.message.meta.source)] += 1;
    metrics_.delivered_total += 1;
    metrics_.max_age_ms = std::max(metrics_.max_age_ms, age);
    age_sum_ms_ += age;
  }
  metrics_.delivered_value += report.value_sent;
  metrics_.bits_sent += report.bits_sent;

  queue_.clear();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (sent[i]) continue;
    report.deferred.push_back(ranked[i]);
  }
  // Keep the queue in arrival order; ranking is recomputed every slot.
  for (const auto& s : report.deferred) queue_.push_back(s.message);
  std::sort(queue_.begin(), queue_.end(), [](const Message& a, const Message& b) {
    return a.id < b.id;
  });

  ++slot_;
  metrics_.slots_run = slot_;
  return report;
}

SimMetrics Simulator::metrics() const {
  SimMetrics out = metrics_;
  out.residual_count = static_cast<std::int64_t>(queue_.size());
  out.mean_age_ms =
      out.delivered_total > 0 ? age_sum_ms_ / static_cast<double>(out.delivered_total) : 0.0;
  const double capacity =
      static_cast<double>(out.slots_run) * static_cast<double>(config_.channel_bits_per_slot);
  out.channel_utilization = capacity > 0.0 ? static_cast<double>(out.bits_sent) / capacity : 0.0;
  return out;
}

SimMetrics Simulator::run() {
  while (!done()) step();
  return metrics();
}

SimMetrics run(const ScenarioConfig& config, SchedulerKind scheduler) {
  return Simulator(config, scheduler).run();
}

void write_transmission_log(std::ostream& out, std::span<const TransmissionRecord> log) {
  out << "slot,message_id,source,effective_voi,size_bits\n";
  char value[64];
  for (const auto& r : log) {
    std::snprintf(value, sizeof value, "%.6f", r.effective_voi);
    out << r.slot << ',' << r.message_id << ',' << to_string(r.source) << ',' << value << ','
        << r.size_bits << '\n';
  }
}

}  // namespace voi::sim
