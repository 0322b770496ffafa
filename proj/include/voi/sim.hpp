#pragma once

// Slotted, deterministic dissemination simulator. Each slot: generators
// emit messages, the queue is re-ranked by effective VoI (or FIFO for the
// baseline), and messages are sent while they fit the per-slot bit budget.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "voi/voi_model.hpp"

namespace voi::sim {

struct Message {
  std::int64_t id = 0;
  Metadata meta;
  double base_voi = 0.0;
};

struct GeneratorSpec {
  SourceKind source = SourceKind::Surrounding;
  std::int64_t period_slots = 1;
  std::int64_t size_bits = 1;
  double quality = 1.0;
  Point2 position;
  // Origin positions are drawn uniformly within +/- jitter of `position`
  // on each axis, from a stream keyed on (rng_seed, slot, generator).
  double position_jitter_m = 0.0;
  int urgency_level = 0;
};

struct ScenarioConfig {
  std::int64_t duration_slots = 0;
  TimeMs slot_ms = 10.0;
  std::int64_t channel_bits_per_slot = 1;
  std::vector<GeneratorSpec> generators;
  Point2 receiver_position;
  VoiConfig voi_config;
  double gamma = 3.0;
  std::uint64_t rng_seed = 0;
};

// Throws ConfigError naming the offending field.
void validate_scenario(const ScenarioConfig& config);

enum class SchedulerKind { Voi, Fifo };

std::string_view to_string(SchedulerKind kind);

struct ScoredMessage {
  Message message;
  double value = 0.0;  // effective VoI at schedule time
};

// Effective-VoI order: value descending, then earlier generated_at, then
// smaller id.
bool value_order(const ScoredMessage& a, const ScoredMessage& b);
// Baseline order: earlier generated_at, then smaller id.
bool fifo_order(const ScoredMessage& a, const ScoredMessage& b);

std::vector<ScoredMessage> score(std::span<const Message> queue, TimeMs now,
                                 const ScenarioConfig& config);

// Messages ranked by value_order under the scenario's receiver and decay.
std::vector<ScoredMessage> schedule(std::span<const Message> queue, TimeMs now,
                                    const ScenarioConfig& config);

std::vector<ScoredMessage> order_queue(std::span<const Message> queue, TimeMs now,
                                       const ScenarioConfig& config, SchedulerKind scheduler);

// Walks `ordered` and picks every message that still fits the remaining
// budget (a large message does not block smaller ones behind it). Returns
// indices into `ordered`, ascending.
std::vector<std::size_t> select_for_transmission(std::span<const ScoredMessage> ordered,
                                                 std::int64_t budget_bits);

// Base VoI per SourceKind (indexed by enum value) for the scenario's
// application config at its gamma. Sources not in use score 0.
std::array<double, kSourceKindCount> base_scores(const ScenarioConfig& config);

// Messages emitted at `slot`: one per generator whose period divides the
// slot index. Ids are slot * generators + generator index, so the result is
// a pure function of (config, slot).
std::vector<Message> generate(const ScenarioConfig& config, std::int64_t slot);
std::vector<Message> generate(const ScenarioConfig& config, std::int64_t slot,
                              const std::array<double, kSourceKindCount>& scores);

struct TransmissionRecord {
  std::int64_t slot = 0;
  std::int64_t message_id = 0;
  SourceKind source = SourceKind::Surrounding;
  double effective_voi = 0.0;
  std::int64_t size_bits = 0;

  friend bool operator==(const TransmissionRecord&, const TransmissionRecord&) = default;
};

struct SimMetrics {
  std::int64_t slots_run = 0;
  std::int64_t generated_count = 0;
  std::int64_t delivered_total = 0;
  std::array<std::int64_t, kSourceKindCount> delivered_count{};
  std::int64_t dropped_count = 0;
  std::int64_t residual_count = 0;
  double delivered_value = 0.0;
  double mean_age_ms = 0.0;
  double max_age_ms = 0.0;
  std::int64_t bits_sent = 0;
  double channel_utilization = 0.0;

  friend bool operator==(const SimMetrics&, const SimMetrics&) = default;
};

struct SlotReport {
  std::int64_t slot = 0;
  TimeMs now = 0.0;
  std::int64_t generated = 0;
  std::int64_t dropped = 0;
  std::int64_t bits_sent = 0;
  double value_sent = 0.0;
  std::vector<ScoredMessage> transmitted;  // in transmission order
  std::vector<ScoredMessage> deferred;     // still queued, in ranked order
};

class Simulator {
 public:
  // Validates the scenario and assesses base VoI once up front.
  explicit Simulator(ScenarioConfig config, SchedulerKind scheduler = SchedulerKind::Voi);

  bool done() const noexcept { return slot_ >= config_.duration_slots; }
  std::int64_t slot() const noexcept { return slot_; }

  // Advances one slot. Must not be called once done().
  SlotReport step();
  SimMetrics run();

  // Metrics so far; residual_count and utilization reflect the current slot.
  SimMetrics metrics() const;
  std::span<const Message> queue() const noexcept { return queue_; }
  std::span<const TransmissionRecord> log() const noexcept { return log_; }
  const ScenarioConfig& config() const noexcept { return config_; }

 private:
  ScenarioConfig config_;
  SchedulerKind scheduler_;
  std::array<double, kSourceKindCount> scores_{};
  std::int64_t slot_ = 0;
  std::vector<Message> queue_;
  std::vector<TransmissionRecord> log_;
  SimMetrics metrics_;
  double age_sum_ms_ = 0.0;
};

SimMetrics run(const ScenarioConfig& config, SchedulerKind scheduler = SchedulerKind::Voi);

// CSV: slot,message_id,source,effective_voi,size_bits (6-decimal reals).
void write_transmission_log(std::ostream& out, std::span<const TransmissionRecord> log);

}  // namespace voi::sim
