#pragma once

// JSON documents for VoiConfig and ScenarioConfig. The file layout is
// documented in docs/config_format.md.
//
// Matrix cells are numbers or strings: "3", "1/3", "gamma", "1/gamma".
// Every failure surfaces as ConfigError with a slash-separated field path.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "voi/sim.hpp"
#include "voi/voi_model.hpp"

namespace voi::io {

VoiConfig voi_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const VoiConfig& config);

// `base_dir` resolves a voi_config given as a relative file path.
sim::ScenarioConfig scenario_from_json(const nlohmann::json& doc,
                                       const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const sim::ScenarioConfig& config);

VoiConfig load_voi_config(const std::filesystem::path& path);
sim::ScenarioConfig load_scenario(const std::filesystem::path& path);

// Reads and parses a JSON file; ConfigError if unreadable or malformed.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace voi::io
