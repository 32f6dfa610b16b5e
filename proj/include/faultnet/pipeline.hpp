#pragma once
// Three-stage diagnosis: fault detection, anomaly-vs-hardware typing and
// switch localization, each a classifier over per-window feature vectors
// with record-level majority votes.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "faultnet/features.hpp"
#include "faultnet/learning.hpp"
#include "faultnet/model.hpp"

namespace faultnet {

enum class FaultStatus { NoFault, Detected };
enum class FaultType { None, Anomaly, Hardware };

std::string_view to_string(FaultStatus s) noexcept;
std::string_view to_string(FaultType t) noexcept;

struct Location {
  enum class Kind { NA, Single, Multiple };
  Kind kind = Kind::NA;
  SwitchSet switches;

  static Location from_switches(const SwitchSet& s);
  // "NA", "Single(S1)", "Multiple(S1+S4)".
  std::string to_string() const;
  friend bool operator==(const Location&, const Location&) = default;
};

struct Diagnosis {
  FaultStatus status = FaultStatus::NoFault;
  FaultType type = FaultType::None;
  Location loc;

  // NoFault => (None, NA); Single holds one switch, Multiple two.
  bool valid() const noexcept;
  // "status=NoFault type=None loc=NA"
  std::string to_line() const;
  friend bool operator==(const Diagnosis&, const Diagnosis&) = default;
};

// Stage class dictionaries.
inline const std::vector<std::string> kDetectorClasses = {"NoFault", "Fault"};
inline const std::vector<std::string> kTyperClasses = {"Anomaly", "Hardware"};

struct PipelineModels {
  std::shared_ptr<const Classifier> detector;   // NoFault / Fault
  std::shared_ptr<const Classifier> typer;      // Anomaly / Hardware
  std::shared_ptr<const Classifier> localizer;  // "None" or a switch-set name
  FeatureSpec feature_spec;

  // Throws ErrorKind::Pipeline when a stage is missing or its classes or
  // input dimension do not fit the diagnosis enums and the feature spec.
  void validate() const;
};

// Modal class; ties go to the smallest index. Throws ErrorKind::Domain on an
// empty sequence.
int majority_vote(std::span<const int> window_preds);

// Stage 1 votes over all windows. Stages 2 and 3 vote over the windows the
// detector flagged, so pre-fault windows of a record do not dilute typing
// and localization.
Diagnosis diagnose_windows(std::span<const FeatureVector> windows,
                           const PipelineModels& models);

Diagnosis run_faultnet(const WaveformRecord& record, const PipelineModels& models);

// One record's windows plus its identity, as the corpus loader yields them.
struct RecordFeatures {
  std::string record_id;
  std::string scenario;  // experiment scenario tag
  LabelSet label;        // record-level ground truth
  std::vector<FeatureVector> windows;
};

struct StageKinds {
  ModelKind detector = ModelKind::KNN;
  ModelKind typer = ModelKind::DT;
  ModelKind localizer = ModelKind::ANN;
};

// Window-level training projections.
LabeledDataset detector_dataset(std::span<const RecordFeatures> corpus);
LabeledDataset typer_dataset(std::span<const RecordFeatures> corpus);
// Classes are the switch-set names present, in canonical order ("None" first).
LabeledDataset localizer_dataset(std::span<const RecordFeatures> corpus);

// Class of a record for stage 3 ("None", "S1", "S3+S6", ...).
std::string location_class(const LabelSet& label);

// Trains the three stages independently. Throws ErrorKind::Coverage naming
// the stage and the missing class ("typer class missing: Anomaly").
PipelineModels train_pipeline(std::span<const RecordFeatures> corpus,
                              const StageKinds& kinds, const Hyperparams& hp,
                              const FeatureSpec& spec);

}  // namespace faultnet
