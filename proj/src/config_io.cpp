#include "voi/config_io.hpp"

#include <cmath>
#include <fstream>

#include "voi/errors.hpp"

namespace voi::io {

using nlohmann::json;

namespace {

// Marks a cell that carries the gamma placeholder while parsing.
enum class Cell { Plain, Gamma, InverseGamma };

std::string join(const std::string& parent, const std::string& child) {
  return parent.empty() ? child : parent + "/" + child;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
  return *it;
}

const json* optional(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

double parse_plain_number(const std::string& text, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path, "cannot parse '" + text + "' as a number");
  }
}

std::pair<double, Cell> parse_cell(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), Cell::Plain};
  if (!v.is_string()) throw ConfigError(path, "expected a number or a string");
  std::string text = v.get<std::string>();
  std::erase(text, ' ');
  if (text == "gamma") return {1.0, Cell::Gamma};
  if (text == "1/gamma") return {1.0, Cell::InverseGamma};
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const double num = parse_plain_number(text.substr(0, slash), path);
    const double den = parse_plain_number(text.substr(slash + 1), path);
    if (den == 0.0) throw ConfigError(path, "zero denominator");
    return {num / den, Cell::Plain};
  }
  return {parse_plain_number(text, path), Cell::Plain};
}

struct ParsedMatrix {
  ahp::ComparisonMatrix matrix;
  std::optional<CellIndex> gamma_slot;
};

ParsedMatrix parse_matrix(const json& v, const std::string& path, bool allow_gamma) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of rows");
  const std::size_t n = v.size();
  std::vector<std::vector<double>> rows;
  std::optional<CellIndex> slot;
  std::optional<CellIndex> inverse;
  std::optional<CellIndex> implied;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = path + "/" + std::to_string(i);
    if (!v[i].is_array()) throw ConfigError(row_path, "expected an array");
    if (v[i].size() != n)
      throw ConfigError(row_path, "row has " + std::to_string(v[i].size()) +
                                      " entries; matrix must be square (" + std::to_string(n) +
                                      ")");
    std::vector<double> row;
    for (std::size_t j = 0; j < n; ++j) {
      const std::string cell_path = row_path + "/" + std::to_string(j);
      if (v[i][j].is_null()) {
        if (!allow_gamma) throw ConfigError(cell_path, "expected a number or a string");
        if (implied) throw ConfigError(cell_path, "more than one implied cell");
        implied = CellIndex{i, j};
        row.push_back(1.0);
        continue;
      }
      const auto [value, kind] = parse_cell(v[i][j], cell_path);
      if (kind != Cell::Plain && !allow_gamma)
        throw ConfigError(cell_path, "gamma is only allowed in attribute_matrix");
      if (kind == Cell::Gamma) {
        if (slot) throw ConfigError(cell_path, "more than one gamma cell");
        if (j <= i) throw ConfigError(cell_path, "gamma must sit above the diagonal");
        slot = CellIndex{i, j};
      } else if (kind == Cell::InverseGamma) {
        if (inverse) throw ConfigError(cell_path, "more than one 1/gamma cell");
        inverse = CellIndex{i, j};
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (inverse && (!slot || !(inverse->row == slot->col && inverse->col == slot->row)))
    throw ConfigError(path, "1/gamma must mirror the gamma cell");
  if (implied && (!slot || !(implied->row == slot->col && implied->col == slot->row)))
    throw ConfigError(path, "only the mirror of the gamma cell may be left empty");
  // The mirror of a gamma cell is implied; ignore whatever was written there.
  if (slot) rows[slot->col][slot->row] = 1.0;
  return {ahp::ComparisonMatrix(std::move(rows)), slot};
}

Point2 parse_point(const json& v, const std::string& path) {
  if (v.is_array() && v.size() == 2)
    return {as_number(v[0], path + "/0"), as_number(v[1], path + "/1")};
  if (v.is_object())
    return {as_number(require(v, "x", path), path + "/x"),
            as_number(require(v, "y", path), path + "/y")};
  throw ConfigError(path, "expected [x, y]");
}

json cell_to_json(double v) {
  if (v >= 1.0 && v == std::round(v)) return static_cast<std::int64_t>(v);
  const double inv = 1.0 / v;
  if (v < 1.0 && std::abs(inv - std::round(inv)) <= 1e-12 * inv)
    return "1/" + std::to_string(static_cast<std::int64_t>(std::round(inv)));
  return v;
}

json matrix_to_json(const ahp::ComparisonMatrix& m, std::optional<CellIndex> slot) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.rows()[i].size(); ++j) {
      if (slot && slot->row == i && slot->col == j)
        row.push_back("gamma");
      else if (slot && slot->row == j && slot->col == i)
        row.push_back("1/gamma");
      else
        row.push_back(cell_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json point_to_json(const Point2& p) { return json::array({p.x, p.y}); }

}  // namespace

VoiConfig voi_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config document must be a JSON object");
  VoiConfig config;

  if (const json* app = optional(doc, "application")) {
    const std::string path = "application";
    const json& kind_field = app->is_object() ? require(*app, "kind", path) : *app;
    const std::string kind_path = app->is_object() ? path + "/kind" : path;
    const auto kind = parse_application_kind(as_string(kind_field, kind_path));
    if (!kind) throw ConfigError(kind_path, "unknown application kind");
    config.application = default_application(*kind);
    if (app->is_object()) {
      if (const json* v = optional(*app, "max_latency_ms"))
        config.application.max_latency_ms = as_number(*v, path + "/max_latency_ms");
      if (const json* v = optional(*app, "min_reliability"))
        config.application.min_reliability = as_number(*v, path + "/min_reliability");
      if (const json* v = optional(*app, "throughput_class"))
        config.application.throughput_class = as_string(*v, path + "/throughput_class");
    }
  } else {
    config.application = default_application(ApplicationKind::Safety);
  }

  const json& attrs = require(doc, "attributes", "");
  if (!attrs.is_array()) throw ConfigError("attributes", "expected an array");
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const std::string path = "attributes/" + std::to_string(i);
    const auto a = parse_attribute(as_string(attrs[i], path));
    if (!a) throw ConfigError(path, "unknown attribute");
    config.attributes.push_back(*a);
  }

  const json& sources = require(doc, "sources", "");
  if (!sources.is_array()) throw ConfigError("sources", "expected an array");
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const std::string path = "sources/" + std::to_string(i);
    const auto s = parse_source_kind(as_string(sources[i], path));
    if (!s) throw ConfigError(path, "unknown source kind");
    config.sources.push_back(*s);
  }

  auto parsed = parse_matrix(require(doc, "attribute_matrix", ""), "attribute_matrix", true);
  config.attribute_matrix = std::move(parsed.matrix);
  config.gamma_slot = parsed.gamma_slot;

  const json& conditional = require(doc, "conditional_matrices", "");
  if (!conditional.is_object())
    throw ConfigError("conditional_matrices", "expected an object keyed by attribute");
  for (const Attribute a : config.attributes) {
    const std::string key(to_string(a));
    config.conditional_matrices.push_back(
        parse_matrix(require(conditional, key, "conditional_matrices"),
                     "conditional_matrices/" + key, false)
            .matrix);
  }
  for (const auto& [key, _] : conditional.items()) {
    const auto a = parse_attribute(key);
    if (!a || std::find(config.attributes.begin(), config.attributes.end(), *a) ==
                  config.attributes.end())
      throw ConfigError("conditional_matrices/" + key, "not one of the listed attributes");
  }

  if (const json* decay = optional(doc, "decay")) {
    if (!decay->is_object()) throw ConfigError("decay", "expected an object");
    if (const json* v = optional(*decay, "time_half_life_ms"))
      config.decay.time_half_life_ms = as_number(*v, "decay/time_half_life_ms");
    if (const json* v = optional(*decay, "space_radius_m"))
      config.decay.space_radius_m = as_number(*v, "decay/space_radius_m");
    if (const json* v = optional(*decay, "space_shape")) {
      const auto shape = parse_space_shape(as_string(*v, "decay/space_shape"));
      if (!shape) throw ConfigError("decay/space_shape", "expected near_preferred or far_preferred");
      config.decay.space_shape = *shape;
    }
  }
  if (const json* v = optional(doc, "consistency_threshold"))
    config.consistency_threshold = as_number(*v, "consistency_threshold");
  if (const json* v = optional(doc, "gamma")) config.default_gamma = as_number(*v, "gamma");

  validate_config(config);
  return config;
}

json to_json(const VoiConfig& config) {
  json doc;
  doc["application"] = {{"kind", to_string(config.application.kind)},
                        {"max_latency_ms", config.application.max_latency_ms},
                        {"min_reliability", config.application.min_reliability},
                        {"throughput_class", config.application.throughput_class}};
  doc["attributes"] = json::array();
  for (auto a : config.attributes) doc["attributes"].push_back(to_string(a));
  doc["sources"] = json::array();
  for (auto s : config.sources) doc["sources"].push_back(to_string(s));
  doc["attribute_matrix"] = matrix_to_json(config.attribute_matrix, config.gamma_slot);
  doc["conditional_matrices"] = json::object();
  for (std::size_t a = 0; a < config.attributes.size() && a < config.conditional_matrices.size();
       ++a)
    doc["conditional_matrices"][std::string(to_string(config.attributes[a]))] =
        matrix_to_json(config.conditional_matrices[a], std::nullopt);
  doc["decay"] = {{"time_half_life_ms", config.decay.time_half_life_ms},
                  {"space_radius_m", config.decay.space_radius_m},
                  {"space_shape", to_string(config.decay.space_shape)}};
  doc["consistency_threshold"] = config.consistency_threshold;
  if (config.default_gamma) doc["gamma"] = *config.default_gamma;
  return doc;
}

sim::ScenarioConfig scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("", "scenario document must be a JSON object");
  sim::ScenarioConfig config;
  config.duration_slots = as_integer(require(doc, "duration_slots", ""), "duration_slots");
  config.channel_bits_per_slot =
      as_integer(require(doc, "channel_bits_per_slot", ""), "channel_bits_per_slot");
  if (const json* v = optional(doc, "slot_ms")) config.slot_ms = as_number(*v, "slot_ms");
  if (const json* v = optional(doc, "receiver_position"))
    config.receiver_position = parse_point(*v, "receiver_position");
  if (const json* v = optional(doc, "rng_seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0))
      throw ConfigError("rng_seed", "expected a non-negative integer");
    config.rng_seed = v->get<std::uint64_t>();
  }

  const json& vc = require(doc, "voi_config", "");
  try {
    if (vc.is_string()) {
      std::filesystem::path p = vc.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      config.voi_config = load_voi_config(p);
    } else {
      config.voi_config = voi_config_from_json(vc);
    }
  } catch (const ConfigError& e) {
    throw ConfigError(join("voi_config", e.field()), e.detail());
  }

  if (const json* v = optional(doc, "gamma"))
    config.gamma = as_number(*v, "gamma");
  else if (config.voi_config.default_gamma)
    config.gamma = *config.voi_config.default_gamma;

  const json& gens = require(doc, "generators", "");
  if (!gens.is_array()) throw ConfigError("generators", "expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string path = "generators/" + std::to_string(i);
    const json& g = gens[i];
    sim::GeneratorSpec spec;
    const auto source = parse_source_kind(as_string(require(g, "source", path), path + "/source"));
    if (!source) throw ConfigError(path + "/source", "unknown source kind");
    spec.source = *source;
    spec.period_slots = as_integer(require(g, "period_slots", path), path + "/period_slots");
    spec.size_bits = as_integer(require(g, "size_bits", path), path + "/size_bits");
    if (const json* v = optional(g, "quality")) spec.quality = as_number(*v, path + "/quality");
    if (const json* v = optional(g, "position")) spec.position = parse_point(*v, path + "/position");
    if (const json* v = optional(g, "position_jitter_m"))
      spec.position_jitter_m = as_number(*v, path + "/position_jitter_m");
    if (const json* v = optional(g, "urgency_level"))
      spec.urgency_level = static_cast<int>(as_integer(*v, path + "/urgency_level"));
    config.generators.push_back(spec);
  }

  sim::validate_scenario(config);
  return config;
}

json to_json(const sim::ScenarioConfig& config) {
  json doc;
  doc["duration_slots"] = config.duration_slots;
  doc["slot_ms"] = config.slot_ms;
  doc["channel_bits_per_slot"] = config.channel_bits_per_slot;
  doc["receiver_position"] = point_to_json(config.receiver_position);
  doc["gamma"] = config.gamma;
  doc["rng_seed"] = config.rng_seed;
  doc["generators"] = json::array();
  for (const auto& g : config.generators) {
    doc["generators"].push_back({{"source", to_string(g.source)},
                                 {"period_slots", g.period_slots},
                                 {"size_bits", g.size_bits},
                                 {"quality", g.quality},
                                 {"position", point_to_json(g.position)},
                                 {"position_jitter_m", g.position_jitter_m},
                                 {"urgency_level", g.urgency_level}});
  }
  doc["voi_config"] = to_json(config.voi_config);
  return doc;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

VoiConfig load_voi_config(const std::filesystem::path& path) {
  return voi_config_from_json(read_json_file(path));
}

sim::ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path), path.parent_path());
}

}  // namespace voi::io
