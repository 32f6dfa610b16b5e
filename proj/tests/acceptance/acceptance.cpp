// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check recomputes its reference values independently of the
// library code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "faultnet/anomaly.hpp"
#include "faultnet/commands.hpp"
#include "faultnet/dataset.hpp"
#include "faultnet/decision_tree.hpp"
#include "faultnet/features.hpp"
#include "faultnet/io.hpp"
#include "faultnet/knn.hpp"
#include "faultnet/mlp.hpp"
#include "faultnet/model.hpp"
#include "faultnet/pipeline.hpp"
#include "faultnet/signal_sim.hpp"
#include "faultnet/svm.hpp"

using namespace faultnet;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// ---------------------------------------------------------------- 1

Outcome transforms() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> u(-10.0, 10.0), ang(-20.0, 20.0);
  const double s3 = std::sqrt(3.0);
  const double clarke_m[2][3] = {{2.0 / 3, -1.0 / 3, -1.0 / 3}, {0.0, 1.0 / s3, -1.0 / s3}};
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = u(gen), b = u(gen), c = u(gen), th = ang(gen);
    const auto ab = clarke(a, b, c);
    const double alpha = clarke_m[0][0] * a + clarke_m[0][1] * b + clarke_m[0][2] * c;
    const double beta = clarke_m[1][0] * a + clarke_m[1][1] * b + clarke_m[1][2] * c;
    worst = std::max({worst, std::abs(ab.alpha - alpha), std::abs(ab.beta - beta)});
    const auto dq = park({alpha, beta}, th);
    const double rot[2][2] = {{std::cos(th), std::sin(th)}, {-std::sin(th), std::cos(th)}};
    worst = std::max({worst, std::abs(dq.d - (rot[0][0] * alpha + rot[0][1] * beta)),
                      std::abs(dq.q - (rot[1][0] * alpha + rot[1][1] * beta))});
  }
  SimConfig cfg;
  cfg.sensor_noise_std = 0.0;
  const auto rec = simulate_healthy(cfg);
  const auto series = transform_record(rec, Frame::AlphaBeta);
  auto radius_dev = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double lo = INFINITY, hi = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double r = std::hypot(x[k], y[k]);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return (hi - lo) / hi;
  };
  const double dev = std::max(radius_dev(series[0], series[1]), radius_dev(series[2], series[3]));
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-12, "transform error " + fmt("%.3g", worst) + " > 1e-12");
  o.require(dev <= 1e-9, "radius deviation " + fmt("%.3g", dev) + " > 1e-9");
  o.require(secs < 1.0, "runtime " + fmt("%.2f", secs) + " s >= 1 s");
  o.detail << "max oracle error " << fmt("%.2e", worst) << ", radius deviation "
           << fmt("%.2e", dev) << ", " << fmt("%.2f", secs) << " s";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome classifier_oracles() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 gen(202);
  std::normal_distribution<double> nd(0.0, 1.0);

  // KNN against a full sort of all exemplars.
  LabeledDataset d(4, {"a", "b", "c"});
  for (int i = 0; i < 150; ++i) {
    std::vector<double> x(4);
    for (double& v : x) v = nd(gen) + (i % 3) * 1.5;
    d.add(x, i % 3);
  }
  KnnParams kp;
  kp.standardize = false;
  const auto knn = knn_fit(d, kp);
  int knn_mismatch = 0;
  for (int q = 0; q < 100; ++q) {
    std::vector<double> x(4);
    for (double& v : x) v = nd(gen) * 2.0 + 1.5;
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < 4; ++j) s += (x[j] - d.values()[i * 4 + j]) * (x[j] - d.values()[i * 4 + j]);
      all.push_back({s, i});
    }
    std::sort(all.begin(), all.end());
    for (int k : {1, 3, 5}) {
      int votes[3] = {0, 0, 0};
      for (int j = 0; j < k; ++j) ++votes[d.label(all[static_cast<std::size_t>(j)].second)];
      const int want = static_cast<int>(std::max_element(votes, votes + 3) - votes);
      knn_mismatch += knn_predict(knn, x, k) != want;
    }
  }
  o.require(knn_mismatch == 0, std::to_string(knn_mismatch) + " KNN mismatches");

  // Gini hand values.
  const double g0 = gini_impurity(std::vector<double>{1.0});
  const double g1 = gini_impurity(std::vector<double>{0.5, 0.5});
  const double g2 = gini_impurity(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  const double gerr = std::max({std::abs(g0), std::abs(g1 - 0.5), std::abs(g2 - 2.0 / 3)});
  o.require(gerr <= 1e-12, "gini error " + fmt("%.3g", gerr));

  // MLP gradient against central differences.
  MlpParams mp;
  mp.hidden = {6, 5};
  mp.activation = Activation::Tanh;
  MlpModel m = mlp_init(4, 3, mp);
  const auto rows = std::vector<double>(d.values().begin(), d.values().begin() + 40);
  const auto labels = std::vector<int>(d.labels().begin(), d.labels().begin() + 10);
  const auto grads = mlp_gradients(m, rows, labels);
  double worst_rel = 0.0;
  const double h = 1e-6;
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    auto sweep = [&](std::vector<double>& params, const std::vector<double>& g) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        const double keep = params[i];
        params[i] = keep + h;
        const double up = mlp_loss(m, rows, labels);
        params[i] = keep - h;
        const double down = mlp_loss(m, rows, labels);
        params[i] = keep;
        const double num = (up - down) / (2 * h);
        const double scale = std::max({std::abs(num), std::abs(g[i]), 1e-3});
        worst_rel = std::max(worst_rel, std::abs(num - g[i]) / scale);
      }
    };
    sweep(m.layers[l].weights, grads.weights[l]);
    sweep(m.layers[l].bias, grads.bias[l]);
  }
  o.require(worst_rel <= 1e-4, "MLP gradient relative error " + fmt("%.3g", worst_rel));

  // Linear SVM on a separable set with margin.
  LabeledDataset sep(3, {"neg", "pos"});
  std::uniform_real_distribution<double> u(-4, 4);
  const double w[3] = {1.0, -2.0, 0.5};
  while (sep.size() < 300) {
    std::vector<double> x = {u(gen), u(gen), u(gen)};
    const double s = w[0] * x[0] + w[1] * x[1] + w[2] * x[2] + 0.3;
    if (std::abs(s) < 0.6) continue;
    sep.add(x, s > 0 ? 1 : 0);
  }
  const auto svm = svm_fit(sep, SvmParams{});
  std::size_t svm_ok = 0;
  for (std::size_t i = 0; i < sep.size(); ++i) svm_ok += svm_predict(svm, sep.values().subspan(i * 3, 3)) == sep.label(i);
  o.require(svm_ok == sep.size(), "SVM training accuracy below 100%");

  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + fmt("%.1f", secs) + " s >= 30 s");
  o.detail << "KNN mismatches " << knn_mismatch << "/300, gini error " << fmt("%.1e", gerr)
           << ", MLP grad rel error " << fmt("%.1e", worst_rel) << ", SVM train acc "
           << fmt("%.1f", 100.0 * static_cast<double>(svm_ok) / static_cast<double>(sep.size()))
           << "%, " << fmt("%.2f", secs) << " s";
  return o;
}

// ---------------------------------------------------------------- 3

Outcome fdi_statistics() {
  Outcome o;
  SimConfig cfg;
  cfg.duration = 2.1;  // 20 000 samples after a 0.1 s onset
  const auto rec = simulate_healthy(cfg);
  std::ostringstream worst;
  std::uint64_t seed = 303;
  for (double f : {0.25, 0.5, 1.0, 2.0}) {
    AnomalyConfig a;
    a.f_amplitude = f;
    a.inject_time = 0.1;
    a.seed = seed++;
    const auto out = inject_fdi(rec, a);
    const std::size_t onset = first_index_at(rec, 0.1);
    const std::size_t n = rec.size() - onset;
    if (n != 20000) o.require(false, "post-onset length " + std::to_string(n));
    double rel_max = 0.0;
    for (int p = 0; p < 3; ++p) {
      double mean = 0.0;
      for (std::size_t k = onset; k < rec.size(); ++k) mean += out.i_abc[p][k] - rec.i_abc[p][k];
      mean /= static_cast<double>(n);
      double var = 0.0;
      for (std::size_t k = onset; k < rec.size(); ++k) {
        const double e = out.i_abc[p][k] - rec.i_abc[p][k] - mean;
        var += e * e;
      }
      var /= static_cast<double>(n - 1);
      const double expected = 0.1 * f * f;
      rel_max = std::max(rel_max, std::abs(var - expected) / expected);
    }
    o.require(rel_max <= 0.05, "F=" + fmt("%g", f) + " variance off by " + fmt("%.3f", rel_max));
    worst << " F=" << f << ":" << fmt("%.2f%%", 100 * rel_max);
  }
  AnomalyConfig zero;
  zero.f_amplitude = 0.0;
  const auto same = inject_fdi(rec, zero);
  const bool identical = same.i_abc == rec.i_abc && same.v_abc == rec.v_abc && same.t == rec.t;
  o.require(identical, "F=0 changed the record");
  o.detail << "variance deviation" << worst.str() << "; F=0 bit-identical " << (identical ? "yes" : "no");
  return o;
}

// ---------------------------------------------------------------- shared corpus helpers

std::vector<RecordFeatures> corpus(const std::vector<ScenarioTag>& tags, int seeds,
                                   int healthy, std::vector<double> f_grid = {1.0},
                                   int anomaly_seeds = 1, std::uint64_t base_seed = 2024) {
  ExperimentGrid g;
  g.scenarios = tags;
  g.seeds_per_cell = seeds;
  g.healthy_seeds = healthy;
  g.f_grid = std::move(f_grid);
  g.anomaly_seeds_per_cell = anomaly_seeds;
  g.base_seed = base_seed;
  const SimConfig sim;
  return build_corpus(enumerate_cells(g), g, sim, default_feature_spec(sim));
}

// Record-level detection accuracy of a detector trained on `train`.
double detection_accuracy(const Classifier& det, const std::vector<RecordFeatures>& test) {
  std::size_t ok = 0;
  for (const auto& r : test) {
    std::vector<int> preds;
    for (const auto& w : r.windows) preds.push_back(det.predict(w.values));
    ok += (majority_vote(preds) == 1) == r.label.fault_present;
  }
  return 100.0 * static_cast<double>(ok) / static_cast<double>(test.size());
}

// ---------------------------------------------------------------- 4

class CountingClassifier final : public Classifier {
 public:
  CountingClassifier(std::vector<std::string> names, std::function<int()> next)
      : names_(std::move(names)), next_(std::move(next)) {}
  std::size_t dim() const override { return 12; }
  const std::vector<std::string>& class_names() const override { return names_; }
  int predict(std::span<const double>) const override {
    ++calls;
    return next_();
  }
  mutable std::size_t calls = 0;

 private:
  std::vector<std::string> names_;
  std::function<int()> next_;
};

Outcome control_flow() {
  Outcome o;
  // Healthy record through a pipeline trained on the standard corpus.
  const auto train = corpus({ScenarioTag::S1_NoAnom, ScenarioTag::S2_Anom,
                             ScenarioTag::S3_MultiNoAnom, ScenarioTag::S4_MultiAnom},
                            6, 20, {0.5, 1.0, 2.0});
  const SimConfig sim;
  const auto models = train_pipeline(train, StageKinds{}, Hyperparams{}, default_feature_spec(sim));
  SimConfig probe;
  probe.seed = 987654321;  // not used by any corpus record
  const Diagnosis healthy = run_faultnet(simulate_healthy(probe), models);
  o.require(healthy == Diagnosis{}, "healthy record gave " + healthy.to_line());

  // Gating: a NoFault detector never reaches the later stages.
  std::vector<FeatureVector> windows(25);
  for (auto& w : windows) w.values.assign(12, 0.0);
  auto det0 = std::make_shared<CountingClassifier>(kDetectorClasses, [] { return 0; });
  auto typ = std::make_shared<CountingClassifier>(kTyperClasses, [] { return 1; });
  auto loc = std::make_shared<CountingClassifier>(canonical_location_classes(), [] { return 1; });
  PipelineModels fake{det0, typ, loc, FeatureSpec{}};
  const auto gated = diagnose_windows(windows, fake);
  o.require(gated == Diagnosis{} && typ->calls == 0 && loc->calls == 0,
            "later stages invoked after NoFault");

  // Fuzzed stage outputs.
  std::mt19937_64 gen(404);
  std::uniform_int_distribution<int> bit(0, 1), cls(0, 12);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  auto det = std::make_shared<CountingClassifier>(kDetectorClasses, [&] { return bit(gen); });
  auto typ2 = std::make_shared<CountingClassifier>(kTyperClasses, [&] { return bit(gen); });
  auto loc2 = std::make_shared<CountingClassifier>(canonical_location_classes(), [&] { return cls(gen); });
  PipelineModels fuzz{det, typ2, loc2, FeatureSpec{}};
  std::size_t violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    windows.resize(len(gen));
    for (auto& w : windows) w.values.assign(12, 0.0);
    const std::size_t before = typ2->calls;
    const Diagnosis dx = diagnose_windows(windows, fuzz);
    violations += !dx.valid();
    if (dx.status == FaultStatus::NoFault && typ2->calls != before) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " invariant violations");
  o.detail << "healthy -> " << healthy.to_line() << "; gated stage calls " << typ->calls + loc->calls
           << "; fuzz violations " << violations << "/10000";
  return o;
}

// ---------------------------------------------------------------- 5

Outcome scenario_single() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto all = corpus({ScenarioTag::S1_NoAnom}, 20, 20);
  const Split s = split_records(all, 0.3, 5);
  const auto train = select_records(all, s.train), test = select_records(all, s.test);
  const Hyperparams hp;
  const LabeledDataset flat = localizer_dataset(train);
  const auto knn = train_model(ModelKind::KNN, flat, hp);
  const auto ann = train_model(ModelKind::ANN, flat, hp);
  const double knn_acc = evaluate_flat(knn, test).accuracy;
  const double ann_acc = evaluate_flat(ann, test).accuracy;
  const auto det = train_model(ModelKind::KNN, detector_dataset(train), hp);
  const double det_acc = detection_accuracy(det, test);
  const double secs = seconds_since(t0);
  o.require(flat.num_classes() == 7, "expected 7 classes");
  o.require(knn_acc >= 90.0, "KNN accuracy " + fmt("%.2f", knn_acc));
  o.require(ann_acc >= 90.0, "ANN accuracy " + fmt("%.2f", ann_acc));
  o.require(det_acc >= 99.0, "detection accuracy " + fmt("%.2f", det_acc));
  o.require(secs < 180.0, "runtime " + fmt("%.0f", secs) + " s");
  o.detail << train.size() << "/" << test.size() << " records, 7-class KNN " << fmt("%.2f", knn_acc)
           << "%, ANN " << fmt("%.2f", ann_acc) << "%, detection " << fmt("%.2f", det_acc) << "%, "
           << fmt("%.1f", secs) << " s";
  return o;
}

// ---------------------------------------------------------------- 6

Outcome scenario_pairs() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto all = corpus({ScenarioTag::S1_NoAnom, ScenarioTag::S3_MultiNoAnom}, 20, 20);
  const Split s = split_records(all, 0.3, 5);
  const auto train = select_records(all, s.train), test = select_records(all, s.test);
  const LabeledDataset flat = localizer_dataset(train);
  o.require(flat.num_classes() == 13, "expected 13 classes");
  double best = 0.0;
  std::string best_kind;
  std::ostringstream all_f1;
  for (ModelKind kind : kAllModelKinds) {
    const auto m = train_model(kind, flat, Hyperparams{});
    const double f1 = evaluate_flat(m, test).macro_f1;
    all_f1 << " " << to_string(kind) << "=" << fmt("%.1f", f1);
    if (f1 > best) {
      best = f1;
      best_kind = std::string(to_string(kind));
    }
  }
  const double secs = seconds_since(t0);
  o.require(best >= 85.0, "best macro F1 " + fmt("%.2f", best));
  o.require(secs < 300.0, "runtime " + fmt("%.0f", secs) + " s");
  o.detail << "13-class macro F1:" << all_f1.str() << " (best " << best_kind << " "
           << fmt("%.2f", best) << "%), " << fmt("%.1f", secs) << " s";
  return o;
}

// ---------------------------------------------------------------- 7

Outcome anomaly_discrimination() {
  Outcome o;
  const std::vector<double> levels = {0.5, 1.0, 1.5, 2.0};
  const std::vector<std::uint64_t> split_seeds = {1, 2, 3, 4, 5};
  const auto hardware = corpus({ScenarioTag::S1_NoAnom}, 20, 20);
  std::vector<double> mean_acc;
  double worst = 100.0;
  for (double f : levels) {
    auto records = hardware;
    const auto fdi = corpus({ScenarioTag::S2_Anom}, 1, 0, {f}, 20);
    records.insert(records.end(), fdi.begin(), fdi.end());
    double sum = 0.0;
    for (std::uint64_t seed : split_seeds) {
      const Split s = split_records(records, 0.3, seed);
      const auto train = select_records(records, s.train), test = select_records(records, s.test);
      const Hyperparams hp;
      const auto det = std::make_shared<TrainedModel>(train_model(ModelKind::KNN, detector_dataset(train), hp));
      const auto typ = std::make_shared<TrainedModel>(train_model(ModelKind::DT, typer_dataset(train), hp));
      // Typer votes over the windows the detector flags, as in the pipeline.
      std::size_t ok = 0, n = 0;
      for (const auto& r : test) {
        if (!r.label.fault_present) continue;
        std::vector<int> votes;
        for (const auto& w : r.windows)
          if (det->predict(w.values) == 1) votes.push_back(typ->predict(w.values));
        const bool anomaly = !votes.empty() && majority_vote(votes) == 0;
        ok += anomaly == (r.label.fault_kind == FaultKind::Anomaly);
        ++n;
      }
      const double acc = 100.0 * static_cast<double>(ok) / static_cast<double>(n);
      worst = std::min(worst, acc);
      o.require(acc >= 90.0, "F=" + fmt("%g", f) + " seed " + std::to_string(seed) + " accuracy " + fmt("%.2f", acc));
      sum += acc;
    }
    mean_acc.push_back(sum / static_cast<double>(split_seeds.size()));
  }
  for (std::size_t i = 1; i < mean_acc.size(); ++i)
    o.require(mean_acc[i] >= mean_acc[i - 1], "mean accuracy decreases between F=" +
                                                  fmt("%g", levels[i - 1]) + " and F=" + fmt("%g", levels[i]));
  o.detail << "mean typer accuracy over 5 splits:";
  for (std::size_t i = 0; i < levels.size(); ++i)
    o.detail << " F=" << levels[i] << ":" << fmt("%.2f%%", mean_acc[i]);
  o.detail << ", worst split " << fmt("%.2f%%", worst);
  return o;
}

// ---------------------------------------------------------------- 8

int cli(std::vector<std::string> args, std::ostream& out) {
  args.insert(args.begin(), "faultnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) out << err.str();
  return code;
}

// Relative path -> bytes of every regular file under `dir`.
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& f : fs::recursive_directory_iterator(dir))
    if (f.is_regular_file())
      files.push_back({fs::relative(f.path(), dir).generic_string(), read_file(f.path())});
  std::sort(files.begin(), files.end());
  return files;
}

Outcome reproducibility() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "faultnet-acceptance-repro";
  fs::remove_all(root);
  const auto cfg = root / "config.json";
  write_file(cfg, R"({"grid": {"seeds_per_cell": 3, "healthy_seeds": 6, "f_grid": [0.5, 1.5],
                      "anomaly_seeds_per_cell": 2}})");
  std::ostringstream log;
  for (const char* run : {"run1", "run2"}) {
    const auto dir = root / run;
    const auto manifest = (dir / "corpus" / "manifest.json").string();
    int rc = cli({"generate", "--config", cfg.string(), "--out", (dir / "corpus").string()}, log);
    rc |= cli({"train", "--config", cfg.string(), "--manifest", manifest, "--out", (dir / "bundle").string()}, log);
    rc |= cli({"train", "--config", cfg.string(), "--manifest", manifest, "--model", "svm", "--out", (dir / "svm").string()}, log);
    rc |= cli({"evaluate", "--bundle", (dir / "bundle").string(), "--manifest", manifest, "--out", (dir / "eval").string()}, log);
    rc |= cli({"report", "--config", cfg.string(), "--manifest", manifest, "--out", (dir / "report").string()}, log);
    o.require(rc == 0, std::string(run) + " command failed: " + log.str());
  }
  const auto a = snapshot(root / "run1");
  const auto b = snapshot(root / "run2");
  std::size_t csv = 0, differing = 0;
  for (const auto& [name, bytes] : a) csv += name.ends_with(".csv");
  if (a.size() != b.size()) {
    o.require(false, "file sets differ");
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i];
  }
  o.require(differing == 0, std::to_string(differing) + " files differ");
  o.require(csv > 0, "no CSV files produced");
  o.detail << a.size() << " files compared (" << csv << " CSV, bundles, evaluation and report), "
           << differing << " differ";
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1 transform correctness", transforms},
      {"2 classifier oracles", classifier_oracles},
      {"3 FDI statistics", fdi_statistics},
      {"4 staged diagnosis control flow", control_flow},
      {"5 single-switch end to end", scenario_single},
      {"6 switch-pair localization", scenario_pairs},
      {"7 anomaly discrimination", anomaly_discrimination},
      {"8 reproducibility", reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.name << ": " << o.detail.str()
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
