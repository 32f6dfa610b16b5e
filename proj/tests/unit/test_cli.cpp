#include <sstream>

#include "faultnet/commands.hpp"
#include "faultnet/io.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace faultnet;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "faultnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  test::TempDir dir{"cli"};

  std::string write_config(const std::string& name, const std::string& text) {
    const auto p = dir.path() / name;
    write_file(p, text);
    return p.string();
  }

  std::string path(const std::string& rel) const { return (dir.path() / rel).string(); }

  // Single-switch corpus, with FDI records when `anomalies` is set.
  std::string small_corpus(const std::string& name, bool anomalies,
                           const std::string& extra = "") {
    const std::string scen = anomalies ? R"(["s1", "s2"])" : R"(["s1"])";
    const auto cfg = write_config(name + ".json", R"({"grid": {"scenarios": )" + scen +
                                                      R"(, "seeds_per_cell": 4, "healthy_seeds": 6, "f_grid": [1.0], "anomaly_seeds_per_cell": 4})" +
                                                      extra + "}");
    const auto r = cli({"generate", "--config", cfg, "--out", path(name)});
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name + "/manifest.json");
  }
};

}  // namespace

TEST_F(CliTest, GenerateReportsGridArithmetic) {
  const auto cfg = write_config("g.json", R"({"grid": {"seeds_per_cell": 1, "healthy_seeds": 1, "f_grid": [0.5]}})");
  const auto r = cli({"generate", "--config", cfg, "--out", path("new/dir")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cells: 12 single + 12 pair cases, 25 records (12 hardware-only, 12 with FDI, 1 healthy)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("config hash: "), std::string::npos);
  EXPECT_TRUE(fs::exists(path("new/dir/manifest.json")));
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  const auto cfg = write_config("bad.json", R"({"grid": {"sed": 1}})");
  const auto r = cli({"generate", "--config", cfg, "--out", path("x")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("grid.sed"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"generate"}).code, 2);
  EXPECT_EQ(cli({"fly"}).code, 2);
  EXPECT_EQ(cli({"train", "--manifest", "m", "--out", path("b"), "--model", "forest"}).code, 2);
}

TEST_F(CliTest, PipelineWithoutAnomaliesIsACoverageError) {
  const auto manifest = small_corpus("s1", false);
  const auto r = cli({"train", "--manifest", manifest, "--out", path("bundle")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("typer class missing"), std::string::npos) << r.err;
}

TEST_F(CliTest, SingleModelBundleIsDeterministic) {
  const auto manifest = small_corpus("s1", false);
  ASSERT_EQ(cli({"train", "--manifest", manifest, "--model", "knn", "--out", path("b1")}).code, 0);
  ASSERT_EQ(cli({"train", "--manifest", manifest, "--model", "knn", "--out", path("b2")}).code, 0);
  const auto doc = nlohmann::json::parse(read_file(path("b1/bundle.json")));
  EXPECT_EQ(doc["kinds"]["model"], "KNN");
  EXPECT_EQ(read_file(path("b1/bundle.json")), read_file(path("b2/bundle.json")));
  EXPECT_EQ(read_file(path("b1/model.json")), read_file(path("b2/model.json")));

  const auto r = cli({"evaluate", "--bundle", path("b1"), "--manifest", manifest, "--out", path("eval")});
  ASSERT_EQ(r.code, 0) << r.err;
  // The table and the JSON copy carry the same numbers.
  const auto ev = nlohmann::json::parse(read_file(path("eval/evaluation.json")));
  char acc[32];
  std::snprintf(acc, sizeof acc, "%.4f", ev["rows"][0]["accuracy"].get<double>());
  EXPECT_NE(r.out.find(acc), std::string::npos) << r.out;
  const auto train_eval = cli({"evaluate", "--bundle", path("b1"), "--manifest", manifest, "--partition", "train"});
  EXPECT_EQ(train_eval.code, 0);
}

TEST_F(CliTest, FeatureSpecMismatchExitsFour) {
  const auto manifest = small_corpus("s1", false);
  ASSERT_EQ(cli({"train", "--manifest", manifest, "--model", "dt", "--out", path("b")}).code, 0);
  const auto other = small_corpus("w100", false, R"(, "features": {"window_len": 100})");
  const auto r = cli({"evaluate", "--bundle", path("b"), "--manifest", other});
  EXPECT_EQ(r.code, 4) << r.err;
}

TEST_F(CliTest, TrainDiagnoseAndReport) {
  const auto manifest = small_corpus("s12", true);
  const auto t = cli({"train", "--manifest", manifest, "--out", path("pipe")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_TRUE(fs::exists(path("pipe/detector.json")));

  const auto healthy = cli({"diagnose", "--bundle", path("pipe"), "--record", path("s12/records/healthy-L1-seed00.csv")});
  ASSERT_EQ(healthy.code, 0) << healthy.err;
  EXPECT_EQ(healthy.out, "status=NoFault type=None loc=NA\n");
  const auto s1 = cli({"diagnose", "--bundle", path("pipe"), "--record", path("s12/records/s1-S1-L1-seed00.csv")});
  EXPECT_NE(s1.out.find("loc=Single(S1)"), std::string::npos) << s1.out;

  // Truncated final row.
  std::string text = read_file(path("s12/records/healthy-L1-seed01.csv"));
  text = text.substr(0, text.size() - 20);
  write_file(path("cut.csv"), text);
  const auto bad = cli({"diagnose", "--bundle", path("pipe"), "--record", path("cut.csv")});
  EXPECT_EQ(bad.code, 5);
  EXPECT_NE(bad.err.find("row "), std::string::npos) << bad.err;

  const auto ev = cli({"evaluate", "--bundle", path("pipe"), "--manifest", manifest});
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_NE(ev.out.find("localization"), std::string::npos);

  const auto rep = cli({"report", "--manifest", manifest, "--out", path("rep"), "--model", "dt"});
  ASSERT_EQ(rep.code, 0) << rep.err;
  EXPECT_NE(rep.out.find("Scenario 1"), std::string::npos);
  EXPECT_NE(rep.out.find("Scenario 2"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("rep/report.json")));
}
