#pragma once
// Experiment corpus: the scenario grid, on-disk record/feature files with a
// manifest, record-disjoint splits and record-level evaluation.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "faultnet/features.hpp"
#include "faultnet/metrics.hpp"
#include "faultnet/pipeline.hpp"
#include "faultnet/scenario.hpp"

namespace faultnet {

enum class ScenarioTag { Healthy, S1_NoAnom, S2_Anom, S3_MultiNoAnom, S4_MultiAnom };

// "healthy", "s1", "s2", "s3", "s4".
std::string_view to_string(ScenarioTag s) noexcept;
std::optional<ScenarioTag> parse_scenario_tag(std::string_view text) noexcept;

struct ExperimentGrid {
  std::vector<ScenarioTag> scenarios = {ScenarioTag::S1_NoAnom, ScenarioTag::S2_Anom,
                                        ScenarioTag::S3_MultiNoAnom,
                                        ScenarioTag::S4_MultiAnom};
  // Attack amplitudes for the anomaly scenarios: 0.05 .. 2.0 in 0.05 steps.
  std::vector<double> f_grid = default_f_grid();
  int seeds_per_cell = 20;          // hardware-only cells
  int anomaly_seeds_per_cell = 1;   // per (case, F) cell
  int healthy_seeds = 20;           // per load level
  std::vector<double> load_levels = {1.0};
  std::uint64_t base_seed = 2024;
  double fault_time = 0.1;
  double inject_time = 0.15;

  static std::vector<double> default_f_grid();
  // Throws ErrorKind::Config.
  void validate(const SimConfig& sim) const;
};

// One record of the grid.
struct Cell {
  std::string id;  // "s1-S1-L1-seed03", "s2-S3+S2-F0.5-L1-seed00", "healthy-L1-seed07"
  ScenarioTag scenario = ScenarioTag::Healthy;
  SwitchSet switches;
  double f = 0.0;  // 0 for hardware-only and healthy cells
  double load = 1.0;
  int seed_index = 0;
  std::uint64_t seed = 0;

  FaultScenario fault_scenario(const ExperimentGrid& grid) const;
};

// Healthy cells first, then scenarios in grid order, cases in table order.
// Throws ErrorKind::Config on duplicate cell ids.
std::vector<Cell> enumerate_cells(const ExperimentGrid& grid);

WaveformRecord simulate_cell(const Cell& cell, const ExperimentGrid& grid,
                             const SimConfig& sim);

// Features of every cell, computed in memory.
std::vector<RecordFeatures> build_corpus(const std::vector<Cell>& cells,
                                         const ExperimentGrid& grid, const SimConfig& sim,
                                         const FeatureSpec& spec);

// ---- on-disk layout ----

inline constexpr int kCorpusFormatVersion = 1;

struct ManifestEntry {
  Cell cell;
  LabelSet label;
  std::string record_csv;    // relative to the corpus directory
  std::string meta_json;
  std::string features_csv;
};

struct Manifest {
  std::filesystem::path root;
  std::string config_hash;
  FeatureSpec feature_spec;
  SimConfig sim;
  std::vector<ManifestEntry> entries;
};

// Canonical text of the inputs that determine a corpus, hashed into the
// manifest and every sidecar.
std::string corpus_config_text(const ExperimentGrid& grid, const SimConfig& sim,
                               const FeatureSpec& spec);

// Writes records/<id>.csv, records/<id>.json, features/<id>.csv and
// manifest.json under `dir`. Returns the manifest path.
std::filesystem::path generate_corpus(const ExperimentGrid& grid, const SimConfig& sim,
                                      const FeatureSpec& spec,
                                      const std::filesystem::path& dir);

// Throws ErrorKind::Compatibility on a version mismatch, ErrorKind::Schema on
// malformed content.
Manifest load_manifest(const std::filesystem::path& path);
std::vector<RecordFeatures> load_features(const Manifest& manifest);

// Record CSV with header t,va,vb,vc,ia,ib,ic. The reader throws
// ErrorKind::Schema naming the first bad row and column.
std::string record_to_csv(const WaveformRecord& record);
WaveformRecord record_from_csv(const std::string& text, const SimConfig& sim);

std::string features_to_csv(const std::vector<FeatureVector>& windows,
                            const FeatureSpec& spec);
std::vector<FeatureVector> features_from_csv(const std::string& text,
                                             const FeatureSpec& spec);

// ---- splits and evaluation ----

struct Split {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::vector<std::string> warnings;
};

// Record-level split, stratified by (location class, anomaly flag). A stratum
// with one record goes to train with a warning. Throws ErrorKind::Parameter
// unless 0 < test_fraction < 1.
Split split_records(const std::vector<RecordFeatures>& records, double test_fraction,
                    std::uint64_t seed);

std::vector<RecordFeatures> select_records(const std::vector<RecordFeatures>& records,
                                           const std::vector<std::string>& ids);

std::vector<RecordFeatures> filter_scenarios(const std::vector<RecordFeatures>& records,
                                             const std::vector<ScenarioTag>& keep);

// Record-level location classification by a flat model: majority vote over
// all windows, truth is the record's switch-set class.
MetricsReport evaluate_flat(const Classifier& model,
                            const std::vector<RecordFeatures>& records);

struct PipelineEvaluation {
  MetricsReport detection;     // NoFault / Fault over all records
  MetricsReport typing;        // Anomaly / Hardware over faulty records
  MetricsReport localization;  // switch-set class over all records
  std::vector<Diagnosis> diagnoses;
};

PipelineEvaluation evaluate_pipeline(const PipelineModels& models,
                                     const std::vector<RecordFeatures>& records);

}  // namespace faultnet
