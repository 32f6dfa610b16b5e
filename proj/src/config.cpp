#include "faultnet/config.hpp"

#include <set>

#include "faultnet/error.hpp"
#include "faultnet/io.hpp"

namespace faultnet {

using nlohmann::json;

namespace {

// Reads the keys of one object and rejects the ones nobody asked for.
class Section {
 public:
  Section(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail(ErrorKind::Config, "'" + where_ + "' must be an object");
  }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      fail(ErrorKind::Config, "key '" + path(key) + "' has the wrong type");
    }
  }

  const json* sub(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const {
    return where_.empty() ? key : where_ + "." + key;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) fail(ErrorKind::Config, "unknown key '" + path(key) + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json switch_map_json(const SwitchMap& map) {
  json j = json::object();
  for (SwitchId s : kAllSwitches) {
    const auto& loc = map[static_cast<std::size_t>(s)];
    j[std::string(to_string(s))] = std::string(to_string(loc.leg)) + "/" +
                                   std::string(to_string(loc.position));
  }
  return j;
}

SwitchMap switch_map_from(const json& j, const std::string& where) {
  SwitchMap map = default_switch_map();
  Section sec(j, where);
  for (SwitchId s : kAllSwitches) {
    std::string text;
    sec.get(std::string(to_string(s)), text);
    if (text.empty()) continue;
    const auto slash = text.find('/');
    const std::string leg = text.substr(0, slash);
    const std::string pos = slash == std::string::npos ? "" : text.substr(slash + 1);
    SwitchLocation loc{};
    if (leg == "A") loc.leg = Leg::A;
    else if (leg == "B") loc.leg = Leg::B;
    else if (leg == "C") loc.leg = Leg::C;
    else fail(ErrorKind::Config, "key '" + sec.path(std::string(to_string(s))) + "' needs a leg A, B or C");
    if (pos == "Upper") loc.position = Position::Upper;
    else if (pos == "Lower") loc.position = Position::Lower;
    else fail(ErrorKind::Config, "key '" + sec.path(std::string(to_string(s))) + "' needs Upper or Lower");
    map[static_cast<std::size_t>(s)] = loc;
  }
  sec.finish();
  return map;
}

std::string channel_key(Channel c) {
  switch (c) {
    case Channel::V1: return "v1";
    case Channel::V2: return "v2";
    case Channel::I1: return "i1";
    case Channel::I2: return "i2";
  }
  return "?";
}

json mlp_json(const MlpParams& p) {
  return {{"hidden", p.hidden},
          {"activation", to_string(p.activation)},
          {"epochs", p.epochs},
          {"batch", p.batch},
          {"learning_rate", p.learning_rate},
          {"momentum", p.momentum},
          {"seed", p.seed}};
}

MlpParams mlp_from(const json& j, MlpParams p, const std::string& where) {
  Section sec(j, where);
  sec.get("hidden", p.hidden);
  std::string act(to_string(p.activation));
  sec.get("activation", act);
  const auto parsed = parse_activation(act);
  if (!parsed) fail(ErrorKind::Config, "key '" + sec.path("activation") + "' is not relu, sigmoid or tanh");
  p.activation = *parsed;
  sec.get("epochs", p.epochs);
  sec.get("batch", p.batch);
  sec.get("learning_rate", p.learning_rate);
  sec.get("momentum", p.momentum);
  sec.get("seed", p.seed);
  sec.finish();
  return p;
}

ModelKind kind_from(Section& sec, const std::string& key, ModelKind fallback) {
  std::string text(to_string(fallback));
  sec.get(key, text);
  const auto kind = parse_model_kind(text);
  if (!kind) fail(ErrorKind::Config, "key '" + sec.path(key) + "' is not a model kind");
  return *kind;
}

}  // namespace

json to_json(const SimConfig& s) {
  return {{"f0", s.f0},
          {"fs", s.fs},
          {"duration", s.duration},
          {"v_amp", s.v_amp},
          {"i_amp", s.i_amp},
          {"phase_offset_i", s.phase_offset_i},
          {"seed", s.seed},
          {"sensor_noise_std", s.sensor_noise_std},
          {"residual_factor", s.residual_factor},
          {"voltage_distortion", s.voltage_distortion},
          {"switch_map", switch_map_json(s.switch_map)},
          {"strict_grid", s.strict_grid}};
}

SimConfig sim_from_json(const json& j, const std::string& where) {
  SimConfig s;
  Section sec(j, where);
  sec.get("f0", s.f0);
  sec.get("fs", s.fs);
  sec.get("duration", s.duration);
  sec.get("v_amp", s.v_amp);
  sec.get("i_amp", s.i_amp);
  sec.get("phase_offset_i", s.phase_offset_i);
  sec.get("seed", s.seed);
  sec.get("sensor_noise_std", s.sensor_noise_std);
  sec.get("residual_factor", s.residual_factor);
  sec.get("voltage_distortion", s.voltage_distortion);
  if (const json* m = sec.sub("switch_map")) s.switch_map = switch_map_from(*m, sec.path("switch_map"));
  sec.get("strict_grid", s.strict_grid);
  sec.finish();
  return s;
}

json to_json(const ExperimentGrid& g) {
  json scenarios = json::array();
  for (ScenarioTag t : g.scenarios) scenarios.push_back(std::string(to_string(t)));
  return {{"scenarios", scenarios},
          {"f_grid", g.f_grid},
          {"seeds_per_cell", g.seeds_per_cell},
          {"anomaly_seeds_per_cell", g.anomaly_seeds_per_cell},
          {"healthy_seeds", g.healthy_seeds},
          {"load_levels", g.load_levels},
          {"base_seed", g.base_seed},
          {"fault_time", g.fault_time},
          {"inject_time", g.inject_time}};
}

ExperimentGrid grid_from_json(const json& j, const std::string& where) {
  ExperimentGrid g;
  Section sec(j, where);
  std::vector<std::string> names;
  sec.get("scenarios", names);
  if (sec.sub("scenarios")) {
    g.scenarios.clear();
    for (const auto& name : names) {
      const auto tag = parse_scenario_tag(name);
      if (!tag || *tag == ScenarioTag::Healthy)
        fail(ErrorKind::Config, "key '" + sec.path("scenarios") + "' has unknown scenario '" + name + "'");
      g.scenarios.push_back(*tag);
    }
  }
  sec.get("f_grid", g.f_grid);
  sec.get("seeds_per_cell", g.seeds_per_cell);
  sec.get("anomaly_seeds_per_cell", g.anomaly_seeds_per_cell);
  sec.get("healthy_seeds", g.healthy_seeds);
  sec.get("load_levels", g.load_levels);
  sec.get("base_seed", g.base_seed);
  sec.get("fault_time", g.fault_time);
  sec.get("inject_time", g.inject_time);
  sec.finish();
  return g;
}

json to_json(const FeatureSpec& f) {
  json stats = json::array();
  for (Stat s : f.stats) stats.push_back(std::string(to_string(s)));
  json channels = json::array();
  for (Channel c : f.channels) channels.push_back(channel_key(c));
  return {{"frame", std::string(to_string(f.frame))},
          {"window_len", f.window_len},
          {"window_stride", f.window_stride},
          {"stats", stats},
          {"channels", channels}};
}

FeatureSpec features_from_json(const json& j, const FeatureSpec& base,
                               const std::string& where) {
  FeatureSpec f = base;
  Section sec(j, where);
  std::string frame(to_string(f.frame));
  sec.get("frame", frame);
  if (frame == "ab") f.frame = Frame::AlphaBeta;
  else if (frame == "dq") f.frame = Frame::DQ;
  else fail(ErrorKind::Config, "key '" + sec.path("frame") + "' must be \"ab\" or \"dq\"");
  sec.get("window_len", f.window_len);
  sec.get("window_stride", f.window_stride);
  if (sec.sub("stats")) {
    std::vector<std::string> names;
    sec.get("stats", names);
    f.stats.clear();
    for (const auto& n : names) {
      bool found = false;
      for (Stat s : {Stat::Mean, Stat::Variance, Stat::Lag1Autocorr})
        if (to_string(s) == n) {
          f.stats.push_back(s);
          found = true;
        }
      if (!found) fail(ErrorKind::Config, "key '" + sec.path("stats") + "' has unknown stat '" + n + "'");
    }
  }
  if (sec.sub("channels")) {
    std::vector<std::string> names;
    sec.get("channels", names);
    f.channels.clear();
    for (const auto& n : names) {
      bool found = false;
      for (Channel c : {Channel::V1, Channel::V2, Channel::I1, Channel::I2})
        if (channel_key(c) == n) {
          f.channels.push_back(c);
          found = true;
        }
      if (!found) fail(ErrorKind::Config, "key '" + sec.path("channels") + "' has unknown channel '" + n + "'");
    }
  }
  sec.finish();
  return f;
}

json to_json(const Hyperparams& hp) {
  return {{"dt",
           {{"max_depth", hp.dt.max_depth},
            {"min_leaf", hp.dt.min_leaf},
            {"n_thresholds", hp.dt.n_thresholds}}},
          {"knn", {{"k", hp.knn.k}, {"standardize", hp.knn.standardize}}},
          {"svm",
           {{"C", hp.svm.C},
            {"epochs", hp.svm.epochs},
            {"learning_rate", hp.svm.learning_rate},
            {"seed", hp.svm.seed}}},
          {"nn", mlp_json(hp.nn)},
          {"ann", mlp_json(hp.ann)}};
}

Hyperparams hyperparams_from_json(const json& j, const std::string& where) {
  Hyperparams hp;
  Section sec(j, where);
  if (const json* dt = sec.sub("dt")) {
    Section s(*dt, sec.path("dt"));
    s.get("max_depth", hp.dt.max_depth);
    s.get("min_leaf", hp.dt.min_leaf);
    s.get("n_thresholds", hp.dt.n_thresholds);
    s.finish();
  }
  if (const json* knn = sec.sub("knn")) {
    Section s(*knn, sec.path("knn"));
    s.get("k", hp.knn.k);
    s.get("standardize", hp.knn.standardize);
    s.finish();
  }
  if (const json* svm = sec.sub("svm")) {
    Section s(*svm, sec.path("svm"));
    s.get("C", hp.svm.C);
    s.get("epochs", hp.svm.epochs);
    s.get("learning_rate", hp.svm.learning_rate);
    s.get("seed", hp.svm.seed);
    s.finish();
  }
  if (const json* nn = sec.sub("nn")) hp.nn = mlp_from(*nn, hp.nn, sec.path("nn"));
  if (const json* ann = sec.sub("ann")) hp.ann = mlp_from(*ann, hp.ann, sec.path("ann"));
  sec.finish();
  return hp;
}

json to_json(const RunConfig& cfg) {
  return {{"sim", to_json(cfg.sim)},
          {"grid", to_json(cfg.grid)},
          {"features", to_json(cfg.features)},
          {"models", to_json(cfg.models)},
          {"pipeline",
           {{"detector", std::string(to_string(cfg.pipeline.detector))},
            {"typer", std::string(to_string(cfg.pipeline.typer))},
            {"localizer", std::string(to_string(cfg.pipeline.localizer))}}},
          {"split", {{"test_fraction", cfg.split.test_fraction}, {"seed", cfg.split.seed}}}};
}

void RunConfig::validate() const {
  sim.validate();
  grid.validate(sim);
  features.validate();
  if (models.dt.max_depth < 1) fail(ErrorKind::Config, "models.dt.max_depth must be >= 1");
  if (models.dt.min_leaf < 1) fail(ErrorKind::Config, "models.dt.min_leaf must be >= 1");
  if (models.dt.n_thresholds < 1) fail(ErrorKind::Config, "models.dt.n_thresholds must be >= 1");
  if (models.knn.k < 1) fail(ErrorKind::Config, "models.knn.k must be >= 1");
  if (!(models.svm.C > 0.0)) fail(ErrorKind::Config, "models.svm.C must be > 0");
  if (models.svm.epochs < 1) fail(ErrorKind::Config, "models.svm.epochs must be >= 1");
  if (!(models.svm.learning_rate > 0.0))
    fail(ErrorKind::Config, "models.svm.learning_rate must be > 0");
  for (const MlpParams* p : {&models.nn, &models.ann}) {
    for (int h : p->hidden)
      if (h < 1) fail(ErrorKind::Config, "models hidden layer sizes must be >= 1");
    if (p->epochs < 1 || p->batch < 1 || !(p->learning_rate > 0.0) ||
        !(p->momentum >= 0.0 && p->momentum < 1.0))
      fail(ErrorKind::Config, "models.nn/ann need epochs >= 1, batch >= 1, learning_rate > 0, momentum in [0, 1)");
  }
  if (!(split.test_fraction > 0.0 && split.test_fraction < 1.0))
    fail(ErrorKind::Config, "split.test_fraction must lie in (0, 1)");
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  Section top(doc, "");
  if (const json* s = top.sub("sim")) cfg.sim = sim_from_json(*s);
  cfg.features = default_feature_spec(cfg.sim);
  if (const json* g = top.sub("grid")) cfg.grid = grid_from_json(*g);
  if (const json* f = top.sub("features")) cfg.features = features_from_json(*f, cfg.features);
  if (const json* m = top.sub("models")) cfg.models = hyperparams_from_json(*m);
  if (const json* p = top.sub("pipeline")) {
    Section sec(*p, "pipeline");
    cfg.pipeline.detector = kind_from(sec, "detector", cfg.pipeline.detector);
    cfg.pipeline.typer = kind_from(sec, "typer", cfg.pipeline.typer);
    cfg.pipeline.localizer = kind_from(sec, "localizer", cfg.pipeline.localizer);
    sec.finish();
  }
  if (const json* s = top.sub("split")) {
    Section sec(*s, "split");
    sec.get("test_fraction", cfg.split.test_fraction);
    sec.get("seed", cfg.split.seed);
    sec.finish();
  }
  top.finish();
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    fail(ErrorKind::Config, e.what());
  }
  return parse_run_config(text);
}

}  // namespace faultnet
