#pragma once
// Uniform train/predict/serialize front end over the four learner families.

#include <filesystem>
#include <string>
#include <variant>

#include "faultnet/decision_tree.hpp"
#include "faultnet/knn.hpp"
#include "faultnet/learning.hpp"
#include "faultnet/mlp.hpp"
#include "faultnet/svm.hpp"

namespace faultnet {

struct Hyperparams {
  TreeParams dt;
  KnnParams knn;
  SvmParams svm;
  MlpParams nn = nn_defaults();
  MlpParams ann = ann_defaults();
};

class TrainedModel final : public Classifier {
 public:
  using State = std::variant<DecisionTree, KnnModel, SvmModel, MlpModel>;

  TrainedModel(ModelKind kind, std::vector<std::string> class_names, State state);

  ModelKind kind() const noexcept { return kind_; }
  const State& state() const noexcept { return state_; }

  std::size_t dim() const override;
  const std::vector<std::string>& class_names() const override { return class_names_; }
  int predict(std::span<const double> x) const override;

  template <class T>
  const T* as() const noexcept { return std::get_if<T>(&state_); }

 private:
  ModelKind kind_;
  std::vector<std::string> class_names_;
  State state_;
};

TrainedModel train_model(ModelKind kind, const LabeledDataset& data,
                         const Hyperparams& hp);

// Predicts with the model's own k.
int predict(const TrainedModel& model, std::span<const double> x);

// Versioned text layout (JSON): format tag, version, kind, class names,
// hyperparameters and parameter arrays. Doubles are written in shortest
// round-trip form, so save/load is lossless.
inline constexpr int kModelFormatVersion = 1;
std::string serialize_model(const TrainedModel& model);
// Throws ErrorKind::Compatibility on a wrong format tag or version,
// ErrorKind::Schema on malformed content.
TrainedModel deserialize_model(const std::string& text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace faultnet
