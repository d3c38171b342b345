#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "noisyemo/optimizers.hpp"

namespace noisyemo {

struct CampaignCell {
  std::size_t index = 0;
  std::string label;
  /// Fully resolved optimizer configuration; `seed` is set per run.
  OptimizerConfig optimizer;
  int runs = 1;
  double eps2 = 0.0;
};

/// A run matrix. Cells come from the explicit `cells` list followed by the
/// cartesian product `matrix.problems x matrix.noise x matrix.optimizers`;
/// every cell starts from `defaults`.
struct CampaignConfig {
  std::string name = "campaign";
  std::uint64_t base_seed = 1;
  int runs = 1;
  std::filesystem::path output;
  std::vector<CampaignCell> cells;
};

/// Location inside a JSON document, e.g. {"matrix", "optimizers", 1, "scheme"}.
using JsonPath = std::vector<std::variant<std::string, std::size_t>>;
std::string to_string(const JsonPath& path);

/// 1-based line of the value addressed by `path` in `text`, or of the
/// deepest existing ancestor; 0 when `text` is not valid JSON.
std::size_t locate_line(const std::string& text, const JsonPath& path);

/// Parses a campaign document. Throws ConfigError with the line of the
/// offending value; messages read "<path>: <problem>".
CampaignConfig parse_campaign(const std::string& text);
CampaignConfig load_campaign(const std::filesystem::path& path);

/// Built-in campaign documents: quick, paper-n10, paper-n30, full.
/// Throws ConfigError for unknown names.
std::string builtin_campaign(const std::string& profile);

std::string to_string(Family f);
Family family_from_string(const std::string& text);

LandscapeSpec landscape_from_json(const nlohmann::json& problem, double eps2);
nlohmann::json landscape_to_json(const LandscapeSpec& spec);
/// Snapshot of every setting that influences a run.
nlohmann::json optimizer_to_json(const OptimizerConfig& cfg);
OptimizerConfig optimizer_from_json(const nlohmann::json& snapshot);

/// Seed of run `run` in cell `cell`.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t cell, std::size_t run);

}  // namespace noisyemo
