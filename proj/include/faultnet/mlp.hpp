#pragma once
// Fully connected feed-forward classifier. Each hidden neuron computes
// f(sum_i w_i x_i + b); the output layer is linear followed by softmax and
// trained on cross-entropy with momentum mini-batch gradient descent.

#include <cstdint>
#include <span>
#include <vector>

#include "faultnet/learning.hpp"

namespace faultnet {

enum class Activation { ReLU, Sigmoid, Tanh };

std::string_view to_string(Activation a) noexcept;
std::optional<Activation> parse_activation(std::string_view text) noexcept;

struct MlpParams {
  std::vector<int> hidden = {16};
  Activation activation = Activation::ReLU;
  int epochs = 30;
  int batch = 32;
  double learning_rate = 0.05;
  double momentum = 0.9;
  std::uint64_t seed = 11;
};

// One hidden layer of 16 units.
MlpParams nn_defaults();
// Hidden layers 64/32/16.
MlpParams ann_defaults();

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // out x in, row-major
  std::vector<double> bias;
};

struct MlpModel {
  MlpParams params;
  Standardizer scaler;
  std::vector<DenseLayer> layers;

  std::size_t dim() const noexcept { return layers.empty() ? 0 : layers.front().in; }
  std::size_t num_classes() const noexcept { return layers.empty() ? 0 : layers.back().out; }
};

struct MlpGradients {
  std::vector<std::vector<double>> weights;  // same shapes as the layers
  std::vector<std::vector<double>> bias;
  double loss = 0.0;
};

std::vector<double> softmax(std::span<const double> logits);

// Randomly initialized network with an identity scaler. Throws
// ErrorKind::Config for empty or non-positive layer sizes.
MlpModel mlp_init(std::size_t dim, std::size_t num_classes, const MlpParams& params);

// Class probabilities for a raw input.
std::vector<double> mlp_forward(const MlpModel& model, std::span<const double> x);
int mlp_predict(const MlpModel& model, std::span<const double> x);

// Mean cross-entropy over the rows and its gradient with respect to every
// weight and bias (inputs go through the model's scaler first).
MlpGradients mlp_gradients(const MlpModel& model, std::span<const double> rows,
                           std::span<const int> labels);
double mlp_loss(const MlpModel& model, std::span<const double> rows,
                std::span<const int> labels);

// Throws ErrorKind::Training for an empty dataset or fewer than two classes,
// ErrorKind::Config for invalid layer/batch/epoch settings.
MlpModel mlp_fit(const LabeledDataset& data, const MlpParams& params);

}  // namespace faultnet
