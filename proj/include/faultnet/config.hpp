#pragma once
// Run configuration: one JSON document with sections sim, grid, features,
// models, pipeline and split. Every field is optional and defaults to the
// values in the corresponding structs; unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <string>

#include "faultnet/dataset.hpp"
#include "faultnet/model.hpp"
#include "faultnet/pipeline.hpp"
#include "json.hpp"

namespace faultnet {

struct SplitConfig {
  double test_fraction = 0.3;
  std::uint64_t seed = 5;
};

struct RunConfig {
  SimConfig sim;
  ExperimentGrid grid;
  FeatureSpec features = default_feature_spec(SimConfig{});
  Hyperparams models;
  StageKinds pipeline;
  SplitConfig split;

  // Throws ErrorKind::Config naming the offending field.
  void validate() const;
};

// Throws ErrorKind::Config naming the key ("unknown key 'grid.sed'").
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const SimConfig& sim);
nlohmann::json to_json(const ExperimentGrid& grid);
nlohmann::json to_json(const FeatureSpec& spec);
nlohmann::json to_json(const Hyperparams& hp);

// Strict readers; `where` prefixes key names in error messages.
SimConfig sim_from_json(const nlohmann::json& j, const std::string& where = "sim");
ExperimentGrid grid_from_json(const nlohmann::json& j, const std::string& where = "grid");
FeatureSpec features_from_json(const nlohmann::json& j, const FeatureSpec& base,
                               const std::string& where = "features");
Hyperparams hyperparams_from_json(const nlohmann::json& j,
                                  const std::string& where = "models");

}  // namespace faultnet
