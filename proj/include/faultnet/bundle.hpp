#pragma once
// Trained-model bundle: a directory holding bundle.json plus one model file
// per stage (pipeline) or a single model file (flat classifier).

#include <filesystem>
#include <memory>
#include <string>

#include "faultnet/config.hpp"
#include "faultnet/model.hpp"
#include "faultnet/pipeline.hpp"

namespace faultnet {

inline constexpr int kBundleFormatVersion = 1;

struct Bundle {
  enum class Type { Pipeline, Single };
  Type type = Type::Pipeline;
  FeatureSpec feature_spec;
  SimConfig sim;              // signal settings the features were computed under
  std::string corpus_hash;    // config hash of the training corpus
  SplitConfig split;          // split the model was trained on
  std::shared_ptr<const TrainedModel> model;  // Single
  std::shared_ptr<const TrainedModel> detector, typer, localizer;  // Pipeline

  PipelineModels pipeline() const;
};

// Writes bundle.json and the model files; returns the bundle.json path.
std::filesystem::path save_bundle(const Bundle& bundle, const std::filesystem::path& dir);
// `path` may be the directory or its bundle.json. Throws
// ErrorKind::Compatibility on a format or version mismatch.
Bundle load_bundle(const std::filesystem::path& path);

}  // namespace faultnet
