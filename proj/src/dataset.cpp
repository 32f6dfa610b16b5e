#include "faultnet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "faultnet/anomaly.hpp"
#include "faultnet/config.hpp"
#include "faultnet/error.hpp"
#include "faultnet/hash.hpp"
#include "faultnet/io.hpp"
#include "faultnet/signal_sim.hpp"

namespace faultnet {

using nlohmann::json;

std::string_view to_string(ScenarioTag s) noexcept {
  switch (s) {
    case ScenarioTag::Healthy: return "healthy";
    case ScenarioTag::S1_NoAnom: return "s1";
    case ScenarioTag::S2_Anom: return "s2";
    case ScenarioTag::S3_MultiNoAnom: return "s3";
    case ScenarioTag::S4_MultiAnom: return "s4";
  }
  return "?";
}

std::optional<ScenarioTag> parse_scenario_tag(std::string_view text) noexcept {
  for (ScenarioTag t : {ScenarioTag::Healthy, ScenarioTag::S1_NoAnom, ScenarioTag::S2_Anom,
                        ScenarioTag::S3_MultiNoAnom, ScenarioTag::S4_MultiAnom})
    if (to_string(t) == text) return t;
  return std::nullopt;
}

namespace {

bool has_anomaly(ScenarioTag t) {
  return t == ScenarioTag::S2_Anom || t == ScenarioTag::S4_MultiAnom;
}

bool is_pair_scenario(ScenarioTag t) {
  return t == ScenarioTag::S3_MultiNoAnom || t == ScenarioTag::S4_MultiAnom;
}

}  // namespace

std::vector<double> ExperimentGrid::default_f_grid() {
  std::vector<double> f;
  for (int k = 1; k <= 40; ++k) f.push_back(k / 20.0);
  return f;
}

void ExperimentGrid::validate(const SimConfig& sim) const {
  if (scenarios.empty()) fail(ErrorKind::Config, "grid.scenarios must not be empty");
  std::set<ScenarioTag> seen;
  for (ScenarioTag t : scenarios) {
    if (t == ScenarioTag::Healthy)
      fail(ErrorKind::Config, "grid.scenarios lists 'healthy'; use grid.healthy_seeds");
    if (!seen.insert(t).second) fail(ErrorKind::Config, "grid.scenarios has a duplicate");
  }
  const bool wants_f = std::any_of(scenarios.begin(), scenarios.end(), has_anomaly);
  if (wants_f && f_grid.empty())
    fail(ErrorKind::Config, "grid.f_grid must not be empty for anomaly scenarios");
  for (double f : f_grid) {
    if (!std::isfinite(f) || f < 0.0) fail(ErrorKind::Config, "grid.f_grid values must be >= 0");
    const double steps = f * 20.0;
    if (sim.strict_grid && (f > 2.0 || std::abs(steps - std::round(steps)) > 1e-9))
      fail(ErrorKind::Config, "grid.f_grid values must lie on 0, 0.05, ..., 2.0");
  }
  if (seeds_per_cell < 1) fail(ErrorKind::Config, "grid.seeds_per_cell must be >= 1");
  if (anomaly_seeds_per_cell < 1)
    fail(ErrorKind::Config, "grid.anomaly_seeds_per_cell must be >= 1");
  if (healthy_seeds < 0) fail(ErrorKind::Config, "grid.healthy_seeds must be >= 0");
  if (load_levels.empty()) fail(ErrorKind::Config, "grid.load_levels must not be empty");
  for (double l : load_levels)
    if (!std::isfinite(l) || l <= 0.0) fail(ErrorKind::Config, "grid.load_levels must be > 0");
  if (!(fault_time >= 0.0 && fault_time < sim.duration))
    fail(ErrorKind::Config, "grid.fault_time must lie in [0, sim.duration)");
  if (!(inject_time >= 0.0 && inject_time < sim.duration))
    fail(ErrorKind::Config, "grid.inject_time must lie in [0, sim.duration)");
}

FaultScenario Cell::fault_scenario(const ExperimentGrid& grid) const {
  FaultScenario sc;
  sc.switches = switches;
  sc.fault_time = grid.fault_time;
  sc.load_level = load;
  if (has_anomaly(scenario)) {
    AnomalyConfig a;
    a.f_amplitude = f;
    a.inject_time = grid.inject_time;
    a.seed = mix_seed(seed, "fdi");
    sc.anomaly = a;
  }
  return sc;
}

namespace {

std::string seed_tag(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "seed%02d", i);
  return buf;
}

}  // namespace

std::vector<Cell> enumerate_cells(const ExperimentGrid& grid) {
  std::vector<Cell> cells;
  auto push = [&](Cell c) {
    c.seed = mix_seed(grid.base_seed, c.id);
    cells.push_back(std::move(c));
  };
  for (double load : grid.load_levels)
    for (int s = 0; s < grid.healthy_seeds; ++s) {
      Cell c;
      c.id = "healthy-L" + format_double(load) + "-" + seed_tag(s);
      c.load = load;
      c.seed_index = s;
      push(std::move(c));
    }
  for (ScenarioTag tag : grid.scenarios) {
    const auto& cases = is_pair_scenario(tag) ? table_pair_cases() : table_single_cases();
    const std::vector<double> fs = has_anomaly(tag) ? grid.f_grid : std::vector<double>{0.0};
    const int seeds = has_anomaly(tag) ? grid.anomaly_seeds_per_cell : grid.seeds_per_cell;
    for (const SwitchSet& sw : cases)
      for (double f : fs)
        for (double load : grid.load_levels)
          for (int s = 0; s < seeds; ++s) {
            Cell c;
            c.scenario = tag;
            c.switches = sw;
            c.f = f;
            c.load = load;
            c.seed_index = s;
            c.id = std::string(to_string(tag)) + "-" + sw.name() +
                   (has_anomaly(tag) ? "-F" + format_double(f) : "") + "-L" +
                   format_double(load) + "-" + seed_tag(s);
            push(std::move(c));
          }
  }
  std::set<std::string> ids;
  for (const auto& c : cells)
    if (!ids.insert(c.id).second) fail(ErrorKind::Config, "duplicate grid cell " + c.id);
  return cells;
}

WaveformRecord simulate_cell(const Cell& cell, const ExperimentGrid& grid,
                             const SimConfig& sim) {
  SimConfig cfg = sim;
  cfg.seed = cell.seed;
  return simulate_scenario(cfg, cell.fault_scenario(grid));
}

std::vector<RecordFeatures> build_corpus(const std::vector<Cell>& cells,
                                         const ExperimentGrid& grid, const SimConfig& sim,
                                         const FeatureSpec& spec) {
  std::vector<RecordFeatures> out;
  out.reserve(cells.size());
  for (const Cell& cell : cells) {
    const WaveformRecord rec = simulate_cell(cell, grid, sim);
    out.push_back({cell.id, std::string(to_string(cell.scenario)), rec.label(),
                   extract_features(rec, spec)});
  }
  return out;
}

// ---------------------------------------------------------------- CSV

namespace {

constexpr std::array<const char*, 7> kRecordColumns = {"t", "va", "vb", "vc", "ia", "ib", "ic"};

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

double parse_cell(std::string_view s, std::size_t row, std::string_view column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    fail(ErrorKind::Schema, "row " + std::to_string(row) + " column " + std::string(column) +
                                ": '" + std::string(s) + "' is not a finite number");
  return v;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string record_to_csv(const WaveformRecord& r) {
  std::string out = "t,va,vb,vc,ia,ib,ic\n";
  out.reserve(r.size() * 140);
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += format_double(r.t[i]);
    for (const auto* ch : {&r.v_abc[0], &r.v_abc[1], &r.v_abc[2], &r.i_abc[0], &r.i_abc[1], &r.i_abc[2]}) {
      out += ',';
      out += format_double((*ch)[i]);
    }
    out += '\n';
  }
  return out;
}

WaveformRecord record_from_csv(const std::string& text, const SimConfig& sim) {
  const auto lines = lines_of(text);
  if (lines.empty()) fail(ErrorKind::Schema, "row 1: empty record file");
  const auto header = split_line(lines[0]);
  if (header.size() != kRecordColumns.size())
    fail(ErrorKind::Schema, "row 1: header must be t,va,vb,vc,ia,ib,ic");
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] != kRecordColumns[c])
      fail(ErrorKind::Schema, "row 1 column " + std::to_string(c + 1) + ": expected '" +
                                  kRecordColumns[c] + "'");
  WaveformRecord r;
  r.config = sim;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const std::size_t row = i + 1;
    const auto cells = split_line(lines[i]);
    if (cells.size() != kRecordColumns.size())
      fail(ErrorKind::Schema, "row " + std::to_string(row) + ": expected 7 columns, found " +
                                  std::to_string(cells.size()));
    const double t = parse_cell(cells[0], row, "t");
    if (!r.t.empty() && !(t > r.t.back()))
      fail(ErrorKind::Schema, "row " + std::to_string(row) + " column t: time must increase");
    r.t.push_back(t);
    for (int p = 0; p < 3; ++p) {
      r.v_abc[p].push_back(parse_cell(cells[1 + p], row, kRecordColumns[1 + p]));
      r.i_abc[p].push_back(parse_cell(cells[4 + p], row, kRecordColumns[4 + p]));
    }
  }
  if (r.t.size() < 2) fail(ErrorKind::Schema, "row 2: record needs at least two samples");
  return r;
}

namespace {

std::vector<std::string> feature_header(const FeatureSpec& spec) {
  std::vector<std::string> cols = {"window_start", "fault_present", "fault_kind", "switch_set"};
  for (auto& n : spec.feature_names()) cols.push_back(std::move(n));
  return cols;
}

}  // namespace

std::string features_to_csv(const std::vector<FeatureVector>& windows,
                            const FeatureSpec& spec) {
  std::string out = join(feature_header(spec)) + "\n";
  for (const auto& w : windows) {
    out += std::to_string(w.window_start);
    out += w.label.fault_present ? ",1," : ",0,";
    out += to_string(w.label.fault_kind);
    out += ',';
    out += w.label.switch_set.name();
    for (double v : w.values) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<FeatureVector> features_from_csv(const std::string& text, const FeatureSpec& spec) {
  const auto lines = lines_of(text);
  const auto expected = feature_header(spec);
  if (lines.empty() || lines[0] != join(expected))
    fail(ErrorKind::Schema, "row 1: feature header does not match spec " + spec.id());
  std::vector<FeatureVector> out;
  const std::string spec_id = spec.id();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const std::size_t row = i + 1;
    const auto cells = split_line(lines[i]);
    if (cells.size() != expected.size())
      fail(ErrorKind::Schema, "row " + std::to_string(row) + ": expected " +
                                  std::to_string(expected.size()) + " columns");
    FeatureVector fv;
    fv.spec_id = spec_id;
    const double start = parse_cell(cells[0], row, "window_start");
    if (start < 0.0 || start != std::floor(start))
      fail(ErrorKind::Schema, "row " + std::to_string(row) + " column window_start: not an index");
    fv.window_start = static_cast<std::size_t>(start);
    if (cells[1] != "0" && cells[1] != "1")
      fail(ErrorKind::Schema, "row " + std::to_string(row) + " column fault_present: not 0/1");
    fv.label.fault_present = cells[1] == "1";
    if (cells[2] == "None") fv.label.fault_kind = FaultKind::None;
    else if (cells[2] == "Hardware") fv.label.fault_kind = FaultKind::Hardware;
    else if (cells[2] == "Anomaly") fv.label.fault_kind = FaultKind::Anomaly;
    else fail(ErrorKind::Schema, "row " + std::to_string(row) + " column fault_kind: unknown kind");
    const auto sw = SwitchSet::parse(cells[3]);
    if (!sw) fail(ErrorKind::Schema, "row " + std::to_string(row) + " column switch_set: unknown set");
    fv.label.switch_set = *sw;
    if (!fv.label.valid())
      fail(ErrorKind::Schema, "row " + std::to_string(row) + ": inconsistent label columns");
    for (std::size_t c = 4; c < cells.size(); ++c)
      fv.values.push_back(parse_cell(cells[c], row, expected[c]));
    out.push_back(std::move(fv));
  }
  return out;
}

// ---------------------------------------------------------------- on disk

std::string corpus_config_text(const ExperimentGrid& grid, const SimConfig& sim,
                               const FeatureSpec& spec) {
  const json j = {{"corpus_version", kCorpusFormatVersion},
                  {"prng", std::string(kPrngName)},
                  {"sim", to_json(sim)},
                  {"grid", to_json(grid)},
                  {"features", to_json(spec)}};
  return j.dump();
}

namespace {

constexpr const char* kManifestTag = "faultnet-corpus";

json label_json(const LabelSet& l) {
  return {{"fault_present", l.fault_present},
          {"fault_kind", std::string(to_string(l.fault_kind))},
          {"switch_set", l.switch_set.name()}};
}

}  // namespace

std::filesystem::path generate_corpus(const ExperimentGrid& grid, const SimConfig& sim,
                                      const FeatureSpec& spec,
                                      const std::filesystem::path& dir) {
  sim.validate();
  grid.validate(sim);
  spec.validate();
  const auto cells = enumerate_cells(grid);
  const std::string hash = hex64(fnv1a64(corpus_config_text(grid, sim, spec)));

  json records = json::array();
  for (const Cell& cell : cells) {
    const WaveformRecord rec = simulate_cell(cell, grid, sim);
    const FaultScenario sc = cell.fault_scenario(grid);
    const LabelSet label = rec.label();
    const std::string rec_path = "records/" + cell.id + ".csv";
    const std::string meta_path = "records/" + cell.id + ".json";
    const std::string feat_path = "features/" + cell.id + ".csv";

    write_file(dir / rec_path, record_to_csv(rec));
    const json meta = {{"id", cell.id},
                       {"scenario", std::string(to_string(cell.scenario))},
                       {"switches", cell.switches.name()},
                       {"fault_time", cell.switches.empty() ? 0.0 : sc.fault_time},
                       {"F", cell.f},
                       {"inject_time", sc.anomaly ? sc.anomaly->inject_time : 0.0},
                       {"load", cell.load},
                       {"seed", cell.seed},
                       {"config_hash", hash}};
    write_file(dir / meta_path, meta.dump(1) + "\n");
    write_file(dir / feat_path, features_to_csv(extract_features(rec, spec), spec));

    records.push_back({{"id", cell.id},
                       {"scenario", std::string(to_string(cell.scenario))},
                       {"switches", cell.switches.name()},
                       {"F", cell.f},
                       {"load", cell.load},
                       {"seed_index", cell.seed_index},
                       {"seed", cell.seed},
                       {"label", label_json(label)},
                       {"record_csv", rec_path},
                       {"meta", meta_path},
                       {"features_csv", feat_path}});
  }
  const json manifest = {{"format", kManifestTag},
                         {"version", kCorpusFormatVersion},
                         {"config_hash", hash},
                         {"prng", std::string(kPrngName)},
                         {"sim", to_json(sim)},
                         {"grid", to_json(grid)},
                         {"features", to_json(spec)},
                         {"feature_spec_id", spec.id()},
                         {"records", std::move(records)}};
  const auto path = dir / "manifest.json";
  write_file(path, manifest.dump(1) + "\n");
  return path;
}

Manifest load_manifest(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, path.string() + ": not valid JSON: " + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kManifestTag)
    fail(ErrorKind::Compatibility, path.string() + " is not a corpus manifest");
  if (doc.value("version", -1) != kCorpusFormatVersion)
    fail(ErrorKind::Compatibility, path.string() + ": unsupported corpus version");
  Manifest m;
  m.root = path.parent_path();
  try {
    m.config_hash = doc.at("config_hash").get<std::string>();
    m.sim = sim_from_json(doc.at("sim"));
    m.feature_spec = features_from_json(doc.at("features"), default_feature_spec(m.sim));
    const ExperimentGrid grid = grid_from_json(doc.at("grid"));
    for (const json& r : doc.at("records")) {
      ManifestEntry e;
      e.cell.id = r.at("id").get<std::string>();
      const auto tag = parse_scenario_tag(r.at("scenario").get<std::string>());
      const auto sw = SwitchSet::parse(r.at("switches").get<std::string>());
      if (!tag || !sw) fail(ErrorKind::Schema, "manifest record " + e.cell.id + " is malformed");
      e.cell.scenario = *tag;
      e.cell.switches = *sw;
      e.cell.f = r.at("F").get<double>();
      e.cell.load = r.at("load").get<double>();
      e.cell.seed_index = r.at("seed_index").get<int>();
      e.cell.seed = r.at("seed").get<std::uint64_t>();
      e.label = record_label(e.cell.fault_scenario(grid));
      e.record_csv = r.at("record_csv").get<std::string>();
      e.meta_json = r.at("meta").get<std::string>();
      e.features_csv = r.at("features_csv").get<std::string>();
      m.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, path.string() + ": malformed manifest: " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) fail(ErrorKind::Schema, path.string() + ": " + e.what());
    throw;
  }
  std::set<std::string> ids;
  for (const auto& e : m.entries)
    if (!ids.insert(e.cell.id).second)
      fail(ErrorKind::Schema, path.string() + ": duplicate manifest cell " + e.cell.id);
  return m;
}

std::vector<RecordFeatures> load_features(const Manifest& manifest) {
  std::vector<RecordFeatures> out;
  out.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    const auto file = manifest.root / e.features_csv;
    RecordFeatures rf{e.cell.id, std::string(to_string(e.cell.scenario)), e.label, {}};
    try {
      rf.windows = features_from_csv(read_file(file), manifest.feature_spec);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Schema) throw;
      fail(ErrorKind::Schema, file.string() + ": " + err.what());
    }
    out.push_back(std::move(rf));
  }
  return out;
}

// ---------------------------------------------------------------- splits

Split split_records(const std::vector<RecordFeatures>& records, double test_fraction,
                    std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    fail(ErrorKind::Parameter, "test_fraction must lie in (0, 1)");
  std::map<std::string, std::vector<std::string>> strata;
  for (const auto& r : records) {
    const bool fdi = r.label.fault_kind == FaultKind::Anomaly;
    strata[location_class(r.label) + (fdi ? "|fdi" : "")].push_back(r.record_id);
  }
  Split s;
  for (auto& [key, ids] : strata) {
    std::sort(ids.begin(), ids.end());
    if (ids.size() == 1) {
      s.warnings.push_back("stratum " + key + " has one record; kept in train");
      s.train.push_back(ids[0]);
      continue;
    }
    std::mt19937_64 gen(mix_seed(seed, key));
    std::shuffle(ids.begin(), ids.end(), gen);
    const auto n = static_cast<double>(ids.size());
    auto n_test = static_cast<std::size_t>(std::llround(n * test_fraction));
    n_test = std::clamp<std::size_t>(n_test, 1, ids.size() - 1);
    s.test.insert(s.test.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.insert(s.train.end(), ids.begin() + static_cast<std::ptrdiff_t>(n_test), ids.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

std::vector<RecordFeatures> select_records(const std::vector<RecordFeatures>& records,
                                           const std::vector<std::string>& ids) {
  const std::set<std::string> keep(ids.begin(), ids.end());
  std::vector<RecordFeatures> out;
  for (const auto& r : records)
    if (keep.count(r.record_id)) out.push_back(r);
  return out;
}

std::vector<RecordFeatures> filter_scenarios(const std::vector<RecordFeatures>& records,
                                             const std::vector<ScenarioTag>& keep) {
  std::vector<RecordFeatures> out;
  for (const auto& r : records) {
    const auto tag = parse_scenario_tag(r.scenario);
    if (tag && std::find(keep.begin(), keep.end(), *tag) != keep.end()) out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

MetricsReport evaluate_flat(const Classifier& model, const std::vector<RecordFeatures>& records) {
  const auto& names = model.class_names();
  std::vector<int> preds, truth;
  std::vector<int> window_preds;
  for (const auto& r : records) {
    if (r.windows.empty()) fail(ErrorKind::Window, "record " + r.record_id + " has no windows");
    const auto it = std::find(names.begin(), names.end(), location_class(r.label));
    if (it == names.end())
      fail(ErrorKind::Label, "record class " + location_class(r.label) + " is unknown to the model");
    window_preds.clear();
    for (const auto& w : r.windows) window_preds.push_back(model.predict(w.values));
    preds.push_back(majority_vote(window_preds));
    truth.push_back(static_cast<int>(it - names.begin()));
  }
  return compute_metrics(preds, truth, names);
}

PipelineEvaluation evaluate_pipeline(const PipelineModels& models,
                                     const std::vector<RecordFeatures>& records) {
  PipelineEvaluation ev;
  std::vector<std::string> loc_names = canonical_location_classes();
  auto loc_index = [&](const std::string& name) {
    auto it = std::find(loc_names.begin(), loc_names.end(), name);
    if (it != loc_names.end()) return static_cast<int>(it - loc_names.begin());
    loc_names.push_back(name);
    return static_cast<int>(loc_names.size() - 1);
  };
  const std::vector<std::string> type_names = {"None", "Anomaly", "Hardware"};
  std::vector<int> det_p, det_t, typ_p, typ_t, loc_p, loc_t;
  for (const auto& r : records) {
    const Diagnosis dx = diagnose_windows(r.windows, models);
    ev.diagnoses.push_back(dx);
    det_p.push_back(dx.status == FaultStatus::Detected ? 1 : 0);
    det_t.push_back(r.label.fault_present ? 1 : 0);
    if (r.label.fault_present) {
      typ_p.push_back(static_cast<int>(dx.type));
      typ_t.push_back(r.label.fault_kind == FaultKind::Anomaly ? 1 : 2);
    }
    loc_p.push_back(loc_index(dx.loc.switches.name()));
    loc_t.push_back(loc_index(location_class(r.label)));
  }
  ev.detection = compute_metrics(det_p, det_t, kDetectorClasses);
  if (!typ_p.empty()) ev.typing = compute_metrics(typ_p, typ_t, type_names);
  ev.localization = compute_metrics(loc_p, loc_t, loc_names);
  return ev;
}

}  // namespace faultnet
