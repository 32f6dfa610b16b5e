#include "faultnet/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "faultnet/bundle.hpp"
#include "faultnet/config.hpp"
#include "faultnet/dataset.hpp"
#include "faultnet/error.hpp"
#include "faultnet/hash.hpp"
#include "faultnet/io.hpp"

namespace faultnet {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

RunConfig load_config(const CommonOptions& opt) {
  return opt.config.empty() ? RunConfig{} : load_run_config(opt.config);
}

SplitConfig split_config(const RunConfig& cfg, const CommonOptions& opt) {
  SplitConfig s = cfg.split;
  if (opt.seed) s.seed = *opt.seed;
  return s;
}

// Metrics are rounded once so the table and the JSON copy carry the same
// numbers.
double round4(double v) { return std::round(v * 1e4) / 1e4; }

json report_json(const MetricsReport& r) {
  json per_class = json::array();
  for (const auto& c : r.per_class)
    per_class.push_back({{"class", c.name},
                         {"precision", round4(c.precision)},
                         {"recall", round4(c.recall)},
                         {"f1", round4(c.f1)},
                         {"support", c.support}});
  return {{"accuracy", round4(r.accuracy)},
          {"precision", round4(r.macro_precision)},
          {"recall", round4(r.macro_recall)},
          {"f1", round4(r.macro_f1)},
          {"per_class", per_class},
          {"confusion", {{"classes", r.confusion.class_names}, {"counts", r.confusion.counts}}},
          {"warnings", r.warnings}};
}

MetricsReport rounded(MetricsReport r) {
  r.accuracy = round4(r.accuracy);
  r.macro_precision = round4(r.macro_precision);
  r.macro_recall = round4(r.macro_recall);
  r.macro_f1 = round4(r.macro_f1);
  return r;
}

struct Partitioned {
  Manifest manifest;
  std::vector<RecordFeatures> records;
  Split split;
};

Partitioned load_partitioned(const std::string& manifest_path, const SplitConfig& split) {
  Partitioned p{load_manifest(manifest_path), {}, {}};
  p.records = load_features(p.manifest);
  p.split = split_records(p.records, split.test_fraction, split.seed);
  return p;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const CommonOptions& opt, std::ostream& out) {
  RunConfig cfg = load_config(opt);
  if (opt.seed) cfg.grid.base_seed = *opt.seed;
  cfg.validate();
  const auto cells = enumerate_cells(cfg.grid);
  std::size_t singles = 0, pairs = 0, hardware = 0, anomaly = 0, healthy = 0;
  for (ScenarioTag t : cfg.grid.scenarios) {
    const bool pair = t == ScenarioTag::S3_MultiNoAnom || t == ScenarioTag::S4_MultiAnom;
    (pair ? pairs : singles) += pair ? table_pair_cases().size() : table_single_cases().size();
  }
  for (const auto& c : cells) {
    if (c.scenario == ScenarioTag::Healthy) ++healthy;
    else if (c.scenario == ScenarioTag::S2_Anom || c.scenario == ScenarioTag::S4_MultiAnom) ++anomaly;
    else ++hardware;
  }
  const auto manifest = generate_corpus(cfg.grid, cfg.sim, cfg.features, opt.out);
  const Manifest m = load_manifest(manifest);
  out << "cells: " << singles << " single + " << pairs << " pair cases, " << cells.size()
      << " records (" << hardware << " hardware-only, " << anomaly << " with FDI, " << healthy
      << " healthy)\n";
  out << "manifest: " << manifest.string() << "\n";
  out << "config hash: " << m.config_hash << "\n";
  return 0;
}

// ---------------------------------------------------------------- train

int cmd_train(const CommonOptions& opt, const std::string& manifest_path,
              const std::string& model, std::ostream& out) {
  const RunConfig cfg = load_config(opt);
  const SplitConfig split = split_config(cfg, opt);
  std::optional<ModelKind> kind;
  if (!model.empty()) {
    kind = parse_model_kind(model);
    if (!kind) fail(ErrorKind::Config, "--model must be one of dt, knn, svm, nn, ann");
  }
  const Partitioned p = load_partitioned(manifest_path, split);
  for (const auto& w : p.split.warnings) out << "warning: " << w << "\n";
  const auto train = select_records(p.records, p.split.train);

  Bundle b;
  b.feature_spec = p.manifest.feature_spec;
  b.sim = p.manifest.sim;
  b.corpus_hash = p.manifest.config_hash;
  b.split = split;
  if (kind) {
    const LabeledDataset data = localizer_dataset(train);
    b.type = Bundle::Type::Single;
    b.model = std::make_shared<const TrainedModel>(train_model(*kind, data, cfg.models));
    const auto path = save_bundle(b, opt.out);
    const MetricsReport r = evaluate_flat(*b.model, train);
    out << "trained " << to_string(*kind) << " on " << train.size() << " records ("
        << data.size() << " windows, " << data.num_classes() << " classes)\n";
    out << metrics_table("training split", std::vector<MetricsRow>{{std::string(to_string(*kind)), rounded(r)}});
    out << "bundle: " << path.string() << "\n";
    return 0;
  }

  const PipelineModels models = train_pipeline(train, cfg.pipeline, cfg.models, b.feature_spec);
  b.type = Bundle::Type::Pipeline;
  b.detector = std::dynamic_pointer_cast<const TrainedModel>(models.detector);
  b.typer = std::dynamic_pointer_cast<const TrainedModel>(models.typer);
  b.localizer = std::dynamic_pointer_cast<const TrainedModel>(models.localizer);
  const auto path = save_bundle(b, opt.out);
  const PipelineEvaluation ev = evaluate_pipeline(models, train);
  out << "trained pipeline (detector " << to_string(cfg.pipeline.detector) << ", typer "
      << to_string(cfg.pipeline.typer) << ", localizer " << to_string(cfg.pipeline.localizer)
      << ") on " << train.size() << " records\n";
  out << metrics_table("training split",
                       std::vector<MetricsRow>{{"detection", rounded(ev.detection)},
                                               {"typing", rounded(ev.typing)},
                                               {"localization", rounded(ev.localization)}});
  out << "bundle: " << path.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const CommonOptions& opt, const std::string& bundle_path,
                 const std::string& manifest_path, const std::string& partition,
                 std::ostream& out) {
  const Bundle b = load_bundle(bundle_path);
  SplitConfig split = b.split;
  if (opt.seed) split.seed = *opt.seed;
  const Partitioned p = load_partitioned(manifest_path, split);
  if (!(p.manifest.feature_spec == b.feature_spec))
    fail(ErrorKind::Compatibility, "bundle feature spec " + b.feature_spec.id() +
                                       " does not match corpus feature spec " +
                                       p.manifest.feature_spec.id());
  const auto records =
      select_records(p.records, partition == "train" ? p.split.train : p.split.test);
  if (records.empty()) fail(ErrorKind::Coverage, "the " + partition + " partition is empty");

  std::vector<MetricsRow> rows;
  if (b.type == Bundle::Type::Single) {
    rows.push_back({std::string(to_string(b.model->kind())), rounded(evaluate_flat(*b.model, records))});
  } else {
    const PipelineEvaluation ev = evaluate_pipeline(b.pipeline(), records);
    rows.push_back({"detection", rounded(ev.detection)});
    rows.push_back({"typing", rounded(ev.typing)});
    rows.push_back({"localization", rounded(ev.localization)});
  }

  std::ostringstream text;
  text << metrics_table("evaluation on " + partition + " partition (" +
                            std::to_string(records.size()) + " records, split seed " +
                            std::to_string(split.seed) + ")",
                        rows);
  json doc = {{"partition", partition},
              {"records", records.size()},
              {"split_seed", split.seed},
              {"corpus_hash", p.manifest.config_hash},
              {"bundle_corpus_hash", b.corpus_hash},
              {"rows", json::array()}};
  for (const auto& row : rows) {
    text << "\n" << row.label << " confusion (rows truth, columns prediction)\n"
         << confusion_table(row.report.confusion);
    for (const auto& w : row.report.warnings) text << "warning: " << w << "\n";
    json r = report_json(row.report);
    r["label"] = row.label;
    doc["rows"].push_back(std::move(r));
  }
  out << text.str();
  if (!opt.out.empty()) {
    write_file(fs::path(opt.out) / "evaluation.txt", text.str());
    write_file(fs::path(opt.out) / "evaluation.json", doc.dump(1) + "\n");
    out << "wrote " << (fs::path(opt.out) / "evaluation.json").string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- diagnose

int cmd_diagnose(const std::string& bundle_path, const std::string& record_path,
                 std::ostream& out) {
  const Bundle b = load_bundle(bundle_path);
  if (b.type != Bundle::Type::Pipeline)
    fail(ErrorKind::Compatibility, "diagnose needs a pipeline bundle");
  const std::string text = read_file(record_path);
  WaveformRecord rec;
  try {
    rec = record_from_csv(text, b.sim);
  } catch (const Error& e) {
    fail(ErrorKind::Schema, record_path + ": " + e.what());
  }
  out << run_faultnet(rec, b.pipeline()).to_line() << "\n";
  return 0;
}

// ---------------------------------------------------------------- report

constexpr struct {
  ScenarioTag tag;
  const char* title;
} kReportScenarios[] = {
    {ScenarioTag::S1_NoAnom, "Scenario 1: single switch without anomalies"},
    {ScenarioTag::S2_Anom, "Scenario 2: single switch with anomalies"},
    {ScenarioTag::S3_MultiNoAnom, "Scenario 3: multiple switches without anomalies"},
    {ScenarioTag::S4_MultiAnom, "Scenario 4: multiple switches with anomalies"},
};

int cmd_report(const CommonOptions& opt, const std::string& manifest_path,
               const std::string& model, std::ostream& out) {
  const RunConfig cfg = load_config(opt);
  const SplitConfig split = split_config(cfg, opt);
  std::vector<ModelKind> kinds(std::begin(kAllModelKinds), std::end(kAllModelKinds));
  if (!model.empty()) {
    const auto kind = parse_model_kind(model);
    if (!kind) fail(ErrorKind::Config, "--model must be one of dt, knn, svm, nn, ann");
    kinds = {*kind};
  }
  const Manifest manifest = load_manifest(manifest_path);
  const auto all = load_features(manifest);

  std::ostringstream text;
  json doc = {{"corpus_hash", manifest.config_hash},
              {"split", {{"test_fraction", split.test_fraction}, {"seed", split.seed}}},
              {"scenarios", json::array()}};
  for (const auto& sc : kReportScenarios) {
    const auto records = filter_scenarios(all, {ScenarioTag::Healthy, sc.tag});
    if (records.size() == filter_scenarios(all, {ScenarioTag::Healthy}).size()) continue;
    const Split s = split_records(records, split.test_fraction, split.seed);
    const auto train = select_records(records, s.train);
    const auto test = select_records(records, s.test);
    const LabeledDataset data = localizer_dataset(train);
    std::vector<MetricsRow> rows;
    for (ModelKind kind : kinds) {
      const TrainedModel m = train_model(kind, data, cfg.models);
      rows.push_back({std::string(to_string(kind)), rounded(evaluate_flat(m, test))});
    }
    const std::string title = std::string(sc.title) + " (" + std::to_string(train.size()) +
                              " train / " + std::to_string(test.size()) + " test records, " +
                              std::to_string(data.num_classes()) + " classes)";
    text << metrics_table(title, rows) << "\n";
    json entry = {{"scenario", std::string(to_string(sc.tag))},
                  {"title", sc.title},
                  {"train_records", train.size()},
                  {"test_records", test.size()},
                  {"rows", json::array()}};
    for (const auto& row : rows) {
      json r = report_json(row.report);
      r["model"] = row.label;
      entry["rows"].push_back(std::move(r));
    }
    doc["scenarios"].push_back(std::move(entry));
  }
  out << text.str();
  write_file(fs::path(opt.out) / "report.txt", text.str());
  write_file(fs::path(opt.out) / "report.json", doc.dump(1) + "\n");
  out << "wrote " << (fs::path(opt.out) / "report.json").string() << "\n";
  return 0;
}

void add_common(CLI::App* app, CommonOptions& opt, bool out_required) {
  app->add_option("--config", opt.config, "run configuration (JSON)");
  app->add_option("--seed", opt.seed, "seed override (grid base seed for generate, split seed otherwise)");
  auto* o = app->add_option("--out", opt.out, "output directory");
  if (out_required) o->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"faultnet: inverter open-switch fault and FDI anomaly diagnosis"};
  app.require_subcommand(1);
  CommonOptions opt;
  std::string manifest, bundle, record, model, partition = "test";

  auto* gen = app.add_subcommand("generate", "synthesize the experiment corpus");
  add_common(gen, opt, true);

  auto* train = app.add_subcommand("train", "train a pipeline bundle or a single model");
  add_common(train, opt, true);
  train->add_option("--manifest", manifest, "corpus manifest.json")->required();
  train->add_option("--model", model, "train one flat classifier: dt, knn, svm, nn or ann");

  auto* eval = app.add_subcommand("evaluate", "score a bundle on a corpus partition");
  add_common(eval, opt, false);
  eval->add_option("--bundle", bundle, "bundle directory")->required();
  eval->add_option("--manifest", manifest, "corpus manifest.json")->required();
  eval->add_option("--partition", partition, "train or test")
      ->check(CLI::IsMember({"train", "test"}));

  auto* diag = app.add_subcommand("diagnose", "diagnose one record CSV");
  diag->add_option("--bundle", bundle, "pipeline bundle directory")->required();
  diag->add_option("--record", record, "record CSV (t,va,vb,vc,ia,ib,ic)")->required();

  auto* rep = app.add_subcommand("report", "per-scenario metric tables for every model kind");
  add_common(rep, opt, true);
  rep->add_option("--manifest", manifest, "corpus manifest.json")->required();
  rep->add_option("--model", model, "restrict to one model kind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code_for(ErrorKind::Config);
  }

  try {
    if (*gen) return cmd_generate(opt, out);
    if (*train) return cmd_train(opt, manifest, model, out);
    if (*eval) return cmd_evaluate(opt, bundle, manifest, partition, out);
    if (*diag) return cmd_diagnose(bundle, record, out);
    if (*rep) return cmd_report(opt, manifest, model, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace faultnet
