#include "faultnet/pipeline.hpp"

#include <algorithm>
#include <map>

#include "faultnet/error.hpp"

namespace faultnet {

std::string_view to_string(FaultStatus s) noexcept {
  return s == FaultStatus::NoFault ? "NoFault" : "Detected";
}

std::string_view to_string(FaultType t) noexcept {
  switch (t) {
    case FaultType::None: return "None";
    case FaultType::Anomaly: return "Anomaly";
    case FaultType::Hardware: return "Hardware";
  }
  return "?";
}

Location Location::from_switches(const SwitchSet& s) {
  Location loc;
  loc.switches = s;
  if (s.empty())
    loc.kind = Kind::NA;
  else if (s.size() == 1)
    loc.kind = Kind::Single;
  else
    loc.kind = Kind::Multiple;
  return loc;
}

std::string Location::to_string() const {
  switch (kind) {
    case Kind::NA: return "NA";
    case Kind::Single: return "Single(" + switches.name() + ")";
    case Kind::Multiple: return "Multiple(" + switches.name() + ")";
  }
  return "NA";
}

bool Diagnosis::valid() const noexcept {
  if (status == FaultStatus::NoFault && (type != FaultType::None || loc.kind != Location::Kind::NA))
    return false;
  if (status == FaultStatus::Detected && type == FaultType::None) return false;
  switch (loc.kind) {
    case Location::Kind::NA: return loc.switches.empty();
    case Location::Kind::Single: return loc.switches.size() == 1;
    case Location::Kind::Multiple: return loc.switches.size() == 2;
  }
  return false;
}

std::string Diagnosis::to_line() const {
  return "status=" + std::string(to_string(status)) + " type=" +
         std::string(to_string(type)) + " loc=" + loc.to_string();
}

int majority_vote(std::span<const int> window_preds) {
  if (window_preds.empty()) fail(ErrorKind::Domain, "majority_vote of an empty sequence");
  std::map<int, std::size_t> counts;
  for (int p : window_preds) ++counts[p];
  int best = counts.begin()->first;
  std::size_t best_count = 0;
  for (const auto& [cls, n] : counts) {  // ascending class order
    if (n > best_count) {
      best = cls;
      best_count = n;
    }
  }
  return best;
}

namespace {

void expect_classes(const Classifier& c, const std::vector<std::string>& names,
                    std::string_view stage) {
  if (c.class_names() != names)
    fail(ErrorKind::Pipeline, std::string(stage) + " classes do not match the stage dictionary");
}

}  // namespace

void PipelineModels::validate() const {
  if (!detector || !typer || !localizer)
    fail(ErrorKind::Pipeline, "all three stage models must be present");
  expect_classes(*detector, kDetectorClasses, "detector");
  expect_classes(*typer, kTyperClasses, "typer");
  for (const auto& name : localizer->class_names()) {
    const auto s = SwitchSet::parse(name);
    if (!s || s->size() > 2)
      fail(ErrorKind::Pipeline, "localizer class '" + name + "' is not a switch set");
  }
  const std::size_t d = feature_spec.dimension();
  if (detector->dim() != d || typer->dim() != d || localizer->dim() != d)
    fail(ErrorKind::Pipeline, "stage input dimension does not match the feature spec");
}

Diagnosis diagnose_windows(std::span<const FeatureVector> windows,
                           const PipelineModels& models) {
  models.validate();
  if (windows.empty()) fail(ErrorKind::Window, "no feature windows to diagnose");

  Diagnosis dx;
  std::vector<int> preds;
  preds.reserve(windows.size());
  for (const auto& w : windows) preds.push_back(models.detector->predict(w.values));
  constexpr int kFault = 1;
  if (majority_vote(preds) != kFault) return dx;
  dx.status = FaultStatus::Detected;

  std::vector<const FeatureVector*> flagged;
  for (std::size_t i = 0; i < windows.size(); ++i)
    if (preds[i] == kFault) flagged.push_back(&windows[i]);

  preds.clear();
  for (const auto* w : flagged) preds.push_back(models.typer->predict(w->values));
  dx.type = majority_vote(preds) == 0 ? FaultType::Anomaly : FaultType::Hardware;

  preds.clear();
  for (const auto* w : flagged) preds.push_back(models.localizer->predict(w->values));
  const int loc = majority_vote(preds);
  const auto& names = models.localizer->class_names();
  if (loc < 0 || static_cast<std::size_t>(loc) >= names.size())
    fail(ErrorKind::Pipeline, "localizer returned an out-of-range class");
  dx.loc = Location::from_switches(*SwitchSet::parse(names[static_cast<std::size_t>(loc)]));
  return dx;
}

Diagnosis run_faultnet(const WaveformRecord& record, const PipelineModels& models) {
  models.validate();
  const auto windows = extract_features(record, models.feature_spec);
  return diagnose_windows(windows, models);
}

std::string location_class(const LabelSet& label) { return label.switch_set.name(); }

namespace {

std::size_t corpus_dim(std::span<const RecordFeatures> corpus) {
  for (const auto& r : corpus)
    if (!r.windows.empty()) return r.windows.front().values.size();
  fail(ErrorKind::Training, "corpus has no feature windows");
}

}  // namespace

LabeledDataset detector_dataset(std::span<const RecordFeatures> corpus) {
  LabeledDataset data(corpus_dim(corpus), kDetectorClasses);
  for (const auto& r : corpus)
    for (const auto& w : r.windows) data.add(w.values, w.label.fault_present ? 1 : 0);
  return data;
}

LabeledDataset typer_dataset(std::span<const RecordFeatures> corpus) {
  LabeledDataset data(corpus_dim(corpus), kTyperClasses);
  for (const auto& r : corpus)
    for (const auto& w : r.windows) {
      if (!w.label.fault_present) continue;
      data.add(w.values, w.label.fault_kind == FaultKind::Anomaly ? 0 : 1);
    }
  return data;
}

LabeledDataset localizer_dataset(std::span<const RecordFeatures> corpus) {
  std::vector<SwitchSet> present;
  for (const auto& r : corpus)
    for (const auto& w : r.windows)
      if (std::find(present.begin(), present.end(), w.label.switch_set) == present.end())
        present.push_back(w.label.switch_set);
  std::sort(present.begin(), present.end(), [](const SwitchSet& a, const SwitchSet& b) {
    return location_rank(a) < location_rank(b);
  });
  std::vector<std::string> names;
  for (const auto& s : present) names.push_back(s.name());

  LabeledDataset data(corpus_dim(corpus), names);
  for (const auto& r : corpus)
    for (const auto& w : r.windows) {
      const auto it = std::find(present.begin(), present.end(), w.label.switch_set);
      data.add(w.values, static_cast<int>(it - present.begin()));
    }
  return data;
}

namespace {

void require_coverage(const LabeledDataset& data, std::string_view stage) {
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0)
      fail(ErrorKind::Coverage,
           std::string(stage) + " class missing: " + data.class_names()[c]);
  }
  if (data.num_classes() < 2)
    fail(ErrorKind::Coverage, std::string(stage) + " needs at least two classes");
}

}  // namespace

PipelineModels train_pipeline(std::span<const RecordFeatures> corpus,
                              const StageKinds& kinds, const Hyperparams& hp,
                              const FeatureSpec& spec) {
  if (corpus.empty()) fail(ErrorKind::Coverage, "detector class missing: corpus is empty");
  const LabeledDataset det = detector_dataset(corpus);
  require_coverage(det, "detector");
  const LabeledDataset typ = typer_dataset(corpus);
  require_coverage(typ, "typer");
  const LabeledDataset loc = localizer_dataset(corpus);
  require_coverage(loc, "localizer");

  PipelineModels models;
  models.feature_spec = spec;
  models.detector = std::make_shared<TrainedModel>(train_model(kinds.detector, det, hp));
  models.typer = std::make_shared<TrainedModel>(train_model(kinds.typer, typ, hp));
  models.localizer = std::make_shared<TrainedModel>(train_model(kinds.localizer, loc, hp));
  models.validate();
  return models;
}

}  // namespace faultnet
