#include "faultnet/model.hpp"

#include "faultnet/error.hpp"
#include "faultnet/io.hpp"
#include "json.hpp"

namespace faultnet {

using nlohmann::json;

TrainedModel::TrainedModel(ModelKind kind, std::vector<std::string> class_names,
                           State state)
    : kind_(kind), class_names_(std::move(class_names)), state_(std::move(state)) {}

std::size_t TrainedModel::dim() const {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MlpModel>)
          return s.dim();
        else
          return s.dim;
      },
      state_);
}

int TrainedModel::predict(std::span<const double> x) const {
  return std::visit(
      [&](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DecisionTree>)
          return s.predict(x);
        else if constexpr (std::is_same_v<T, KnnModel>)
          return knn_predict(s, x, std::min<int>(s.params.k, static_cast<int>(s.size())));
        else if constexpr (std::is_same_v<T, SvmModel>)
          return svm_predict(s, x);
        else
          return mlp_predict(s, x);
      },
      state_);
}

int predict(const TrainedModel& model, std::span<const double> x) {
  return model.predict(x);
}

TrainedModel train_model(ModelKind kind, const LabeledDataset& data,
                         const Hyperparams& hp) {
  if (data.empty()) fail(ErrorKind::Training, "cannot train on an empty dataset");
  switch (kind) {
    case ModelKind::DT:
      return TrainedModel(kind, data.class_names(), dt_fit(data, hp.dt));
    case ModelKind::KNN:
      return TrainedModel(kind, data.class_names(), knn_fit(data, hp.knn));
    case ModelKind::SVM:
      return TrainedModel(kind, data.class_names(), svm_fit(data, hp.svm));
    case ModelKind::NN:
      return TrainedModel(kind, data.class_names(), mlp_fit(data, hp.nn));
    case ModelKind::ANN:
      return TrainedModel(kind, data.class_names(), mlp_fit(data, hp.ann));
  }
  fail(ErrorKind::Config, "unknown model kind");
}

namespace {

constexpr const char* kFormatTag = "faultnet-model";

json scaler_json(const Standardizer& s) {
  return json{{"mean", s.mean}, {"scale", s.scale}};
}

Standardizer scaler_from(const json& j) {
  return Standardizer{j.at("mean").get<std::vector<double>>(),
                      j.at("scale").get<std::vector<double>>()};
}

json mlp_params_json(const MlpParams& p) {
  return json{{"hidden", p.hidden},
              {"activation", to_string(p.activation)},
              {"epochs", p.epochs},
              {"batch", p.batch},
              {"learning_rate", p.learning_rate},
              {"momentum", p.momentum},
              {"seed", p.seed}};
}

MlpParams mlp_params_from(const json& j) {
  MlpParams p;
  p.hidden = j.at("hidden").get<std::vector<int>>();
  const auto act = parse_activation(j.at("activation").get<std::string>());
  if (!act) fail(ErrorKind::Schema, "unknown activation");
  p.activation = *act;
  p.epochs = j.at("epochs").get<int>();
  p.batch = j.at("batch").get<int>();
  p.learning_rate = j.at("learning_rate").get<double>();
  p.momentum = j.at("momentum").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

struct StateWriter {
  json& hp;
  json& st;

  void operator()(const DecisionTree& t) const {
    hp = {{"max_depth", t.params.max_depth},
          {"min_leaf", t.params.min_leaf},
          {"n_thresholds", t.params.n_thresholds}};
    json nodes = json::array();
    for (const TreeNode& n : t.nodes)
      nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.label, n.distribution}));
    st = {{"num_classes", t.num_classes}, {"nodes", std::move(nodes)}};
  }
  void operator()(const KnnModel& m) const {
    hp = {{"k", m.params.k}, {"standardize", m.params.standardize}};
    st = {{"num_classes", m.num_classes},
          {"scaler", scaler_json(m.scaler)},
          {"labels", m.labels},
          {"exemplars", m.exemplars}};
  }
  void operator()(const SvmModel& m) const {
    hp = {{"C", m.params.C},
          {"epochs", m.params.epochs},
          {"learning_rate", m.params.learning_rate},
          {"seed", m.params.seed}};
    st = {{"scaler", scaler_json(m.scaler)},
          {"weights", m.weights},
          {"bias", m.bias},
          {"objective_history", m.objective_history}};
  }
  void operator()(const MlpModel& m) const {
    hp = mlp_params_json(m.params);
    json layers = json::array();
    for (const DenseLayer& l : m.layers)
      layers.push_back({{"in", l.in}, {"out", l.out}, {"weights", l.weights}, {"bias", l.bias}});
    st = {{"scaler", scaler_json(m.scaler)}, {"layers", std::move(layers)}};
  }
};

TrainedModel::State read_state(ModelKind kind, std::size_t dim, const json& hp,
                               const json& st) {
  switch (kind) {
    case ModelKind::DT: {
      DecisionTree t;
      t.dim = dim;
      t.params.max_depth = hp.at("max_depth").get<int>();
      t.params.min_leaf = hp.at("min_leaf").get<int>();
      t.params.n_thresholds = hp.at("n_thresholds").get<int>();
      t.num_classes = st.at("num_classes").get<std::size_t>();
      for (const json& n : st.at("nodes")) {
        TreeNode node;
        node.feature = n.at(0).get<int>();
        node.threshold = n.at(1).get<double>();
        node.left = n.at(2).get<int>();
        node.right = n.at(3).get<int>();
        node.label = n.at(4).get<int>();
        node.distribution = n.at(5).get<std::vector<double>>();
        t.nodes.push_back(std::move(node));
      }
      if (t.nodes.empty()) fail(ErrorKind::Schema, "tree without nodes");
      const int count = static_cast<int>(t.nodes.size());
      for (const TreeNode& node : t.nodes) {
        if (!node.is_leaf() &&
            (node.left <= 0 || node.right <= 0 || node.left >= count || node.right >= count ||
             node.feature >= static_cast<int>(dim)))
          fail(ErrorKind::Schema, "tree node references out of range");
      }
      return t;
    }
    case ModelKind::KNN: {
      KnnModel m;
      m.dim = dim;
      m.params.k = hp.at("k").get<int>();
      m.params.standardize = hp.at("standardize").get<bool>();
      m.num_classes = st.at("num_classes").get<std::size_t>();
      m.scaler = scaler_from(st.at("scaler"));
      m.labels = st.at("labels").get<std::vector<int>>();
      m.exemplars = st.at("exemplars").get<std::vector<double>>();
      if (m.exemplars.size() != m.labels.size() * dim || m.scaler.dim() != dim)
        fail(ErrorKind::Schema, "knn exemplar array does not match dim");
      return m;
    }
    case ModelKind::SVM: {
      SvmModel m;
      m.dim = dim;
      m.params.C = hp.at("C").get<double>();
      m.params.epochs = hp.at("epochs").get<int>();
      m.params.learning_rate = hp.at("learning_rate").get<double>();
      m.params.seed = hp.at("seed").get<std::uint64_t>();
      m.scaler = scaler_from(st.at("scaler"));
      m.weights = st.at("weights").get<std::vector<std::vector<double>>>();
      m.bias = st.at("bias").get<std::vector<double>>();
      m.objective_history = st.at("objective_history").get<std::vector<double>>();
      if (m.weights.size() != m.bias.size() || m.scaler.dim() != dim)
        fail(ErrorKind::Schema, "svm weight arrays inconsistent");
      for (const auto& w : m.weights)
        if (w.size() != dim) fail(ErrorKind::Schema, "svm weight vector does not match dim");
      return m;
    }
    case ModelKind::NN:
    case ModelKind::ANN: {
      MlpModel m;
      m.params = mlp_params_from(hp);
      m.scaler = scaler_from(st.at("scaler"));
      for (const json& l : st.at("layers")) {
        DenseLayer layer;
        layer.in = l.at("in").get<std::size_t>();
        layer.out = l.at("out").get<std::size_t>();
        layer.weights = l.at("weights").get<std::vector<double>>();
        layer.bias = l.at("bias").get<std::vector<double>>();
        if (layer.weights.size() != layer.in * layer.out || layer.bias.size() != layer.out)
          fail(ErrorKind::Schema, "mlp layer arrays inconsistent");
        m.layers.push_back(std::move(layer));
      }
      if (m.layers.empty() || m.dim() != dim || m.scaler.dim() != dim)
        fail(ErrorKind::Schema, "mlp input size does not match dim");
      for (std::size_t l = 1; l < m.layers.size(); ++l)
        if (m.layers[l].in != m.layers[l - 1].out)
          fail(ErrorKind::Schema, "mlp layer sizes do not chain");
      return m;
    }
  }
  fail(ErrorKind::Schema, "unknown model kind");
}

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  json hp, st;
  std::visit(StateWriter{hp, st}, model.state());
  json doc = {{"format", kFormatTag},
              {"version", kModelFormatVersion},
              {"kind", to_string(model.kind())},
              {"class_names", model.class_names()},
              {"dim", model.dim()},
              {"hyperparams", std::move(hp)},
              {"state", std::move(st)}};
  return doc.dump(1) + "\n";
}

TrainedModel deserialize_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kFormatTag)
      fail(ErrorKind::Compatibility, "not a faultnet model file");
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion)
      fail(ErrorKind::Compatibility, "model format version " + std::to_string(version) +
                                         " is not supported (expected " +
                                         std::to_string(kModelFormatVersion) + ")");
    const auto kind = parse_model_kind(doc.at("kind").get<std::string>());
    if (!kind) fail(ErrorKind::Schema, "unknown model kind");
    auto names = doc.at("class_names").get<std::vector<std::string>>();
    const auto dim = doc.at("dim").get<std::size_t>();
    auto state = read_state(*kind, dim, doc.at("hyperparams"), doc.at("state"));
    return TrainedModel(*kind, std::move(names), std::move(state));
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, std::string("malformed model file: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  write_file(path, serialize_model(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
  return deserialize_model(read_file(path));
}

}  // namespace faultnet
