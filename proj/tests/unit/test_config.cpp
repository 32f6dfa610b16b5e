#include "faultnet/config.hpp"
#include "test_support.hpp"

using namespace faultnet;

namespace {

void expect_config_error(const std::string& text, const std::string& needle) {
  try {
    parse_run_config(text);
    ADD_FAILURE() << "expected a config error for " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
  const auto cfg = parse_run_config("{}");
  EXPECT_EQ(cfg.sim.f0, 60.0);
  EXPECT_EQ(cfg.grid.seeds_per_cell, 20);
  EXPECT_EQ(cfg.features, default_feature_spec(SimConfig{}));
  EXPECT_EQ(cfg.pipeline.detector, ModelKind::KNN);
  EXPECT_EQ(cfg.pipeline.typer, ModelKind::DT);
  EXPECT_EQ(cfg.pipeline.localizer, ModelKind::ANN);
}

TEST(Config, RoundTripThroughJson) {
  auto cfg = parse_run_config(R"({"sim": {"fs": 12000}, "grid": {"scenarios": ["s3"], "f_grid": [0.5]},
      "models": {"knn": {"k": 3}, "ann": {"hidden": [8, 4], "activation": "tanh"}},
      "pipeline": {"localizer": "svm"}, "split": {"seed": 9}})");
  EXPECT_EQ(cfg.sim.fs, 12000.0);
  EXPECT_EQ(cfg.features.window_len, 200u);  // one cycle at the new rate
  EXPECT_EQ(cfg.models.knn.k, 3);
  EXPECT_EQ(cfg.models.ann.activation, Activation::Tanh);
  EXPECT_EQ(cfg.pipeline.localizer, ModelKind::SVM);
  const auto again = parse_run_config(to_json(cfg).dump());
  EXPECT_EQ(to_json(again), to_json(cfg));
}

TEST(Config, UnknownKeysAreNamed) {
  expect_config_error(R"({"grid": {"sed": 3}})", "grid.sed");
  expect_config_error(R"({"simulation": {}})", "simulation");
  expect_config_error(R"({"models": {"ann": {"layers": [3]}}})", "models.ann.layers");
  expect_config_error(R"({"sim": {"f0": "sixty"}})", "sim.f0");
  expect_config_error(R"({"pipeline": {"typer": "forest"}})", "pipeline.typer");
  expect_config_error(R"({"split": {"test_fraction": 1.5}})", "split.test_fraction");
  expect_config_error("{", "not valid JSON");
}
