#include "faultnet/bundle.hpp"

#include "faultnet/error.hpp"
#include "faultnet/hash.hpp"
#include "faultnet/io.hpp"

namespace faultnet {

using nlohmann::json;

namespace {

constexpr const char* kBundleTag = "faultnet-bundle";

}  // namespace

PipelineModels Bundle::pipeline() const {
  if (type != Type::Pipeline) fail(ErrorKind::Pipeline, "bundle holds a single model, not a pipeline");
  PipelineModels m;
  m.detector = detector;
  m.typer = typer;
  m.localizer = localizer;
  m.feature_spec = feature_spec;
  m.validate();
  return m;
}

std::filesystem::path save_bundle(const Bundle& b, const std::filesystem::path& dir) {
  json files = json::object();
  json kinds = json::object();
  json hashes = json::object();
  auto put = [&](const char* role, const std::shared_ptr<const TrainedModel>& m) {
    if (!m) fail(ErrorKind::Pipeline, std::string("bundle is missing the ") + role + " model");
    const std::string name = std::string(role) + ".json";
    const std::string text = serialize_model(*m);
    write_file(dir / name, text);
    files[role] = name;
    kinds[role] = std::string(to_string(m->kind()));
    hashes[role] = hex64(fnv1a64(text));
  };
  if (b.type == Bundle::Type::Single) {
    put("model", b.model);
  } else {
    put("detector", b.detector);
    put("typer", b.typer);
    put("localizer", b.localizer);
  }
  const json doc = {{"format", kBundleTag},
                    {"version", kBundleFormatVersion},
                    {"type", b.type == Bundle::Type::Single ? "single" : "pipeline"},
                    {"kinds", kinds},
                    {"files", files},
                    {"model_hashes", hashes},
                    {"feature_spec", to_json(b.feature_spec)},
                    {"feature_spec_id", b.feature_spec.id()},
                    {"sim", to_json(b.sim)},
                    {"corpus_hash", b.corpus_hash},
                    {"split", {{"test_fraction", b.split.test_fraction}, {"seed", b.split.seed}}}};
  const auto path = dir / "bundle.json";
  write_file(path, doc.dump(1) + "\n");
  return path;
}

Bundle load_bundle(const std::filesystem::path& path) {
  const auto file = std::filesystem::is_directory(path) ? path / "bundle.json" : path;
  const auto dir = file.parent_path();
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, file.string() + ": not valid JSON: " + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kBundleTag)
    fail(ErrorKind::Compatibility, file.string() + " is not a model bundle");
  if (doc.value("version", -1) != kBundleFormatVersion)
    fail(ErrorKind::Compatibility, file.string() + ": unsupported bundle version");
  Bundle b;
  try {
    const std::string type = doc.at("type").get<std::string>();
    b.sim = sim_from_json(doc.at("sim"));
    b.feature_spec = features_from_json(doc.at("feature_spec"), default_feature_spec(b.sim));
    b.corpus_hash = doc.at("corpus_hash").get<std::string>();
    b.split.test_fraction = doc.at("split").at("test_fraction").get<double>();
    b.split.seed = doc.at("split").at("seed").get<std::uint64_t>();
    const json& files = doc.at("files");
    auto load = [&](const char* role) {
      return std::make_shared<const TrainedModel>(
          load_model(dir / files.at(role).get<std::string>()));
    };
    if (type == "single") {
      b.type = Bundle::Type::Single;
      b.model = load("model");
      if (b.model->dim() != b.feature_spec.dimension())
        fail(ErrorKind::Compatibility, "model input size does not match the bundle feature spec");
    } else if (type == "pipeline") {
      b.type = Bundle::Type::Pipeline;
      b.detector = load("detector");
      b.typer = load("typer");
      b.localizer = load("localizer");
      try {
        b.pipeline();
      } catch (const Error& e) {
        fail(ErrorKind::Compatibility, std::string("bundle stages are inconsistent: ") + e.what());
      }
    } else {
      fail(ErrorKind::Schema, file.string() + ": unknown bundle type '" + type + "'");
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, file.string() + ": malformed bundle: " + e.what());
  }
  return b;
}

}  // namespace faultnet
