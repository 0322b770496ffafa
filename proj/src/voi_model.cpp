#include "voi/voi_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "voi/errors.hpp"

namespace voi {

namespace {

std::string normalize_name(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '_' || c == '-' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view text, const std::array<Enum, N>& values) {
  const std::string wanted = normalize_name(text);
  for (Enum v : values)
    if (normalize_name(to_string(v)) == wanted) return v;
  return std::nullopt;
}

constexpr std::array kApplicationKinds = {ApplicationKind::Infotainment, ApplicationKind::Safety,
                                          ApplicationKind::CooperativePerception,
                                          ApplicationKind::Platooning};
constexpr std::array kSourceKinds = {SourceKind::Surrounding, SourceKind::Position,
                                     SourceKind::Traffic, SourceKind::Environmental,
                                     SourceKind::Historical};
constexpr std::array kAttributes = {Attribute::TimeDependency,   Attribute::SpaceDependency,
                                    Attribute::InformationQuality, Attribute::Urgency,
                                    Attribute::Generalizability, Attribute::Novelty,
                                    Attribute::Provenance};
constexpr std::array kSpaceShapes = {SpaceShape::NearPreferred, SpaceShape::FarPreferred};

}  // namespace

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string_view to_string(ApplicationKind kind) {
  switch (kind) {
    case ApplicationKind::Infotainment: return "infotainment";
    case ApplicationKind::Safety: return "safety";
    case ApplicationKind::CooperativePerception: return "cooperative_perception";
    case ApplicationKind::Platooning: return "platooning";
  }
  return "unknown";
}

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Surrounding: return "surrounding";
    case SourceKind::Position: return "position";
    case SourceKind::Traffic: return "traffic";
    case SourceKind::Environmental: return "environmental";
    case SourceKind::Historical: return "historical";
  }
  return "unknown";
}

std::string_view to_string(Attribute kind) {
  switch (kind) {
    case Attribute::TimeDependency: return "time_dependency";
    case Attribute::SpaceDependency: return "space_dependency";
    case Attribute::InformationQuality: return "information_quality";
    case Attribute::Urgency: return "urgency";
    case Attribute::Generalizability: return "generalizability";
    case Attribute::Novelty: return "novelty";
    case Attribute::Provenance: return "provenance";
  }
  return "unknown";
}

std::string_view to_string(SpaceShape shape) {
  switch (shape) {
    case SpaceShape::NearPreferred: return "near_preferred";
    case SpaceShape::FarPreferred: return "far_preferred";
  }
  return "unknown";
}

std::optional<ApplicationKind> parse_application_kind(std::string_view text) {
  return parse_enum(text, kApplicationKinds);
}
std::optional<SourceKind> parse_source_kind(std::string_view text) {
  return parse_enum(text, kSourceKinds);
}
std::optional<Attribute> parse_attribute(std::string_view text) {
  return parse_enum(text, kAttributes);
}
std::optional<SpaceShape> parse_space_shape(std::string_view text) {
  return parse_enum(text, kSpaceShapes);
}

Application default_application(ApplicationKind kind) {
  switch (kind) {
    case ApplicationKind::Infotainment: return {kind, 100.0, 0.99, "high"};
    case ApplicationKind::Safety: return {kind, 10.0, 0.9999, "low"};
    case ApplicationKind::CooperativePerception: return {kind, 100.0, 0.99, "very_high"};
    case ApplicationKind::Platooning: return {kind, 10.0, 0.9999, "medium"};
  }
  return {};
}

void validate_config(const VoiConfig& config) {
  const auto& app = config.application;
  if (!(app.max_latency_ms > 0.0))
    throw ConfigError("application/max_latency_ms", "must be positive");
  if (!(app.min_reliability > 0.0 && app.min_reliability <= 1.0))
    throw ConfigError("application/min_reliability", "must lie in (0, 1]");

  const std::size_t na = config.attributes.size();
  const std::size_t ns = config.sources.size();
  if (na < 2) throw ConfigError("attributes", "need at least two attributes");
  if (ns < 2) throw ConfigError("sources", "need at least two sources");
  if (std::set(config.attributes.begin(), config.attributes.end()).size() != na)
    throw ConfigError("attributes", "duplicate attribute");
  if (std::set(config.sources.begin(), config.sources.end()).size() != ns)
    throw ConfigError("sources", "duplicate source");

  const auto& m = config.attribute_matrix;
  if (m.size() != na || !m.is_square())
    throw ConfigError("attribute_matrix", "must be " + std::to_string(na) + "x" +
                                              std::to_string(na) + " to match attributes");
  if (config.gamma_slot) {
    const auto [r, c] = *config.gamma_slot;
    if (r >= na || c >= na || r >= c)
      throw ConfigError("attribute_matrix", "gamma slot must be a single above-diagonal cell");
  }
  try {
    // Placeholder gamma keeps the slotted cells reciprocal for the check.
    const auto concrete = config.gamma_slot ? instantiate_matrix(config, 1.0) : m;
    if (auto check = ahp::validate(concrete); !check)
      throw ConfigError("attribute_matrix", check.summary());
  } catch (const StructuralError& e) {
    throw ConfigError("attribute_matrix", e.what());
  } catch (const DomainError& e) {
    throw ConfigError("attribute_matrix", e.what());
  }

  if (config.conditional_matrices.size() != na)
    throw ConfigError("conditional_matrices", "need one matrix per attribute (" +
                                                  std::to_string(na) + ")");
  for (std::size_t a = 0; a < na; ++a) {
    const std::string field = "conditional_matrices/" + std::to_string(a);
    const auto& cm = config.conditional_matrices[a];
    if (cm.size() != ns || !cm.is_square())
      throw ConfigError(field, "must be " + std::to_string(ns) + "x" + std::to_string(ns) +
                                   " to match sources");
    try {
      if (auto check = ahp::validate(cm); !check) throw ConfigError(field, check.summary());
    } catch (const StructuralError& e) {
      throw ConfigError(field, e.what());
    } catch (const DomainError& e) {
      throw ConfigError(field, e.what());
    }
  }

  if (!(config.decay.time_half_life_ms > 0.0))
    throw ConfigError("decay/time_half_life_ms", "must be positive");
  if (!(config.decay.space_radius_m > 0.0))
    throw ConfigError("decay/space_radius_m", "must be positive");
  if (!(config.consistency_threshold > 0.0))
    throw ConfigError("consistency_threshold", "must be positive");
  if (config.default_gamma &&
      !(*config.default_gamma >= ahp::kSaatyMin && *config.default_gamma <= ahp::kSaatyMax))
    throw ConfigError("gamma", "must lie in [1/9, 9]");
}

VoiConfig default_safety_config() {
  VoiConfig config;
  config.application = default_application(ApplicationKind::Safety);
  config.attributes = {Attribute::TimeDependency, Attribute::SpaceDependency,
                       Attribute::InformationQuality};
  config.sources = {SourceKind::Surrounding, SourceKind::Position};
  config.attribute_matrix = ahp::ComparisonMatrix{
      {1.0, 1.0, 3.0},
      {1.0, 1.0, 1.0},
      {1.0 / 3.0, 1.0, 1.0},
  };
  config.gamma_slot = CellIndex{1, 2};
  config.conditional_matrices = {
      ahp::ComparisonMatrix{{1.0, 1.0 / 3.0}, {3.0, 1.0}},  // time: position preferred
      ahp::ComparisonMatrix{{1.0, 1.0}, {1.0, 1.0}},        // space: indifferent
      ahp::ComparisonMatrix{{1.0, 5.0}, {1.0 / 5.0, 1.0}},  // quality: surrounding preferred
  };
  config.decay = DecayProfile{100.0, 300.0, SpaceShape::NearPreferred};
  config.default_gamma = 3.0;
  return config;
}

ahp::ComparisonMatrix instantiate_matrix(const VoiConfig& config, double gamma) {
  if (!config.gamma_slot) throw DomainError("config has no gamma slot");
  if (!(gamma >= ahp::kSaatyMin && gamma <= ahp::kSaatyMax))
    throw DomainError("gamma " + std::to_string(gamma) + " outside Saaty bounds [1/9, 9]");
  auto matrix = config.attribute_matrix;
  const auto [r, c] = *config.gamma_slot;
  if (r >= matrix.size() || c >= matrix.size())
    throw StructuralError("gamma slot outside attribute matrix");
  matrix(r, c) = gamma;
  matrix(c, r) = 1.0 / gamma;
  return matrix;
}

Assessment assess(const VoiConfig& config, double gamma, ahp::EigenOptions options) {
  const auto matrix = config.gamma_slot ? instantiate_matrix(config, gamma)
                                        : config.attribute_matrix;
  Assessment out;
  out.attribute_weights = ahp::principal_eigenvector(matrix, options);
  out.report = ahp::consistency_from_lambda(*out.attribute_weights.lambda_max, matrix.size(),
                                            config.consistency_threshold);

  if (config.conditional_matrices.size() != config.attributes.size())
    throw StructuralError("one conditional matrix per attribute is required");
  std::vector<std::vector<double>> rows;
  rows.reserve(config.conditional_matrices.size());
  for (const auto& cm : config.conditional_matrices) {
    out.conditional_weights.push_back(ahp::principal_eigenvector(cm, options));
    rows.push_back(out.conditional_weights.back().weights);
  }
  out.scores = ahp::synthesize(out.attribute_weights, rows);
  return out;
}

std::optional<double> base_voi(const VoiConfig& config, const Assessment& assessment,
                               SourceKind source) {
  const auto it = std::find(config.sources.begin(), config.sources.end(), source);
  if (it == config.sources.end()) return std::nullopt;
  return assessment.scores[static_cast<std::size_t>(it - config.sources.begin())];
}

double effective_voi(double base, const Metadata& meta, TimeMs now,
                     const Point2& receiver_position, const DecayProfile& profile) {
  const TimeMs age = now - meta.generated_at;
  if (age < 0.0)
    throw TemporalOrderError("message evaluated " + std::to_string(-age) +
                             " ms before its generation time");
  const double time_factor = std::exp2(-age / profile.time_half_life_ms);
  const double d = distance(meta.origin, receiver_position);
  const double ratio = d / profile.space_radius_m;
  const double space_factor = profile.space_shape == SpaceShape::NearPreferred
                                  ? std::max(0.0, 1.0 - ratio)
                                  : std::min(1.0, ratio);
  return base * time_factor * space_factor * meta.quality;
}

}  // namespace voi
