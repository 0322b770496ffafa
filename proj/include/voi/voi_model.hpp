#pragma once

// Vehicular domain model and the three-step AHP value assessment:
// attribute weights from the (gamma-parameterized) attribute matrix,
// conditional source weights per attribute, and their synthesis. Also the
// time/space/quality decay applied to an assessed value at delivery time.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voi/ahp.hpp"

namespace voi {

using TimeMs = double;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(const Point2& a, const Point2& b);

enum class ApplicationKind { Infotainment, Safety, CooperativePerception, Platooning };

enum class SourceKind { Surrounding, Position, Traffic, Environmental, Historical };
inline constexpr std::size_t kSourceKindCount = 5;

enum class Attribute {
  TimeDependency,
  SpaceDependency,
  InformationQuality,
  Urgency,
  Generalizability,
  Novelty,
  Provenance,
};

enum class SpaceShape { NearPreferred, FarPreferred };

std::string_view to_string(ApplicationKind kind);
std::string_view to_string(SourceKind kind);
std::string_view to_string(Attribute kind);
std::string_view to_string(SpaceShape shape);

// Accept the canonical names above, case-insensitively, with or without
// underscores ("cooperative_perception", "CooperativePerception").
std::optional<ApplicationKind> parse_application_kind(std::string_view text);
std::optional<SourceKind> parse_source_kind(std::string_view text);
std::optional<Attribute> parse_attribute(std::string_view text);
std::optional<SpaceShape> parse_space_shape(std::string_view text);

// Informational service requirements. Nothing in the assessment reads them.
struct Application {
  ApplicationKind kind = ApplicationKind::Safety;
  double max_latency_ms = 10.0;
  double min_reliability = 0.9999;
  std::string throughput_class = "low";
};

Application default_application(ApplicationKind kind);

struct Metadata {
  SourceKind source = SourceKind::Surrounding;
  TimeMs generated_at = 0.0;
  Point2 origin;
  std::int64_t size_bits = 1;
  double quality = 1.0;
  int urgency_level = 0;
  int hop_count = 0;
};

struct DecayProfile {
  TimeMs time_half_life_ms = 100.0;
  double space_radius_m = 300.0;
  SpaceShape space_shape = SpaceShape::NearPreferred;
};

struct CellIndex {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

struct VoiConfig {
  Application application;
  std::vector<Attribute> attributes;
  std::vector<SourceKind> sources;
  // Entries at the gamma slot and its mirror are placeholders; they are
  // overwritten by instantiate_matrix().
  ahp::ComparisonMatrix attribute_matrix;
  std::optional<CellIndex> gamma_slot;
  // One matrix per attribute, in attribute order, over `sources`.
  std::vector<ahp::ComparisonMatrix> conditional_matrices;
  DecayProfile decay;
  double consistency_threshold = ahp::kDefaultConsistencyThreshold;
  // Used by tools when no gamma is given explicitly.
  std::optional<double> default_gamma;
};

// Structural checks on a config (dimensions, gamma slot placement, decay
// parameters, conditional matrices valid). Throws ConfigError naming the
// offending field.
void validate_config(const VoiConfig& config);

// Safety profile: time/space/quality attributes with the time-space-quality
// matrix (time:space 1, time:quality 3, space:quality gamma), sources
// surrounding/position; quality conditional 5 for surrounding, time
// conditional 3 for position, space conditional uniform.
VoiConfig default_safety_config();

// Attribute matrix with gamma at the slot and 1/gamma at its mirror.
// Throws DomainError for gamma outside [1/9, 9] or a config without a slot.
ahp::ComparisonMatrix instantiate_matrix(const VoiConfig& config, double gamma);

struct Assessment {
  ahp::WeightVector scores;             // one per config.sources entry
  ahp::ConsistencyReport report;        // of the attribute matrix
  ahp::WeightVector attribute_weights;  // one per config.attributes entry
  std::vector<ahp::WeightVector> conditional_weights;
};

// gamma is ignored when the config has no gamma slot.
Assessment assess(const VoiConfig& config, double gamma,
                  ahp::EigenOptions options = {});

// Score of `source` in an assessment, or nullopt if the source is not in use.
std::optional<double> base_voi(const VoiConfig& config, const Assessment& assessment,
                               SourceKind source);

// base * 2^(-age/half_life) * space_factor * quality, where space_factor is
// max(0, 1 - d/radius) for NearPreferred and min(1, d/radius) for
// FarPreferred. Throws TemporalOrderError when now < meta.generated_at.
double effective_voi(double base, const Metadata& meta, TimeMs now,
                     const Point2& receiver_position, const DecayProfile& profile);

}  // namespace voi
