#include "faultnet/mlp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>

#include "faultnet/error.hpp"
#include "faultnet/kernels.hpp"

namespace faultnet {

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
  }
  return "?";
}

std::optional<Activation> parse_activation(std::string_view text) noexcept {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Activation a : {Activation::ReLU, Activation::Sigmoid, Activation::Tanh}) {
    if (to_string(a) == lower) return a;
  }
  return std::nullopt;
}

MlpParams nn_defaults() {
  MlpParams p;
  p.hidden = {16};
  return p;
}

MlpParams ann_defaults() {
  MlpParams p;
  p.hidden = {64, 32, 16};
  return p;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double total = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::ReLU: return z > 0.0 ? z : 0.0;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::Tanh: return std::tanh(z);
  }
  return z;
}

// Derivative expressed through the activation value y = f(z).
double activate_grad(Activation a, double y) {
  switch (a) {
    case Activation::ReLU: return y > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: return y * (1.0 - y);
    case Activation::Tanh: return 1.0 - y * y;
  }
  return 1.0;
}

// Activations of every layer for one scaled input; acts[0] is the input and
// acts.back() the output logits.
void forward(const MlpModel& m, std::span<const double> z,
             std::vector<std::vector<double>>& acts) {
  acts.resize(m.layers.size() + 1);
  acts[0].assign(z.begin(), z.end());
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const DenseLayer& layer = m.layers[l];
    auto& out = acts[l + 1];
    out.resize(layer.out);
    const bool hidden = l + 1 < m.layers.size();
    for (std::size_t o = 0; o < layer.out; ++o) {
      const std::span<const double> row(layer.weights.data() + o * layer.in, layer.in);
      const double s = kernels::dot(row, acts[l]) + layer.bias[o];
      out[o] = hidden ? activate(m.params.activation, s) : s;
    }
  }
}

double log_sum_exp(std::span<const double> v) {
  const double top = *std::max_element(v.begin(), v.end());
  double total = 0.0;
  for (double x : v) total += std::exp(x - top);
  return top + std::log(total);
}

// Adds this sample's gradient into `grad` and returns its loss.
double accumulate(const MlpModel& m, std::span<const double> z, int label,
                  std::vector<std::vector<double>>& acts,
                  std::vector<std::vector<double>>& deltas, MlpGradients& grad) {
  forward(m, z, acts);
  const auto& logits = acts.back();
  const double loss = log_sum_exp(logits) - logits[static_cast<std::size_t>(label)];

  const std::size_t depth = m.layers.size();
  deltas.resize(depth);
  deltas[depth - 1] = softmax(logits);
  deltas[depth - 1][static_cast<std::size_t>(label)] -= 1.0;

  for (std::size_t l = depth; l-- > 0;) {
    const DenseLayer& layer = m.layers[l];
    const auto& delta = deltas[l];
    const auto& input = acts[l];
    auto& gw = grad.weights[l];
    auto& gb = grad.bias[l];
    for (std::size_t o = 0; o < layer.out; ++o) {
      kernels::axpy(delta[o], input, std::span<double>(gw.data() + o * layer.in, layer.in));
      gb[o] += delta[o];
    }
    if (l == 0) break;
    auto& prev = deltas[l - 1];
    prev.assign(layer.in, 0.0);
    for (std::size_t o = 0; o < layer.out; ++o) {
      kernels::axpy(delta[o],
                    std::span<const double>(layer.weights.data() + o * layer.in, layer.in),
                    prev);
    }
    for (std::size_t j = 0; j < layer.in; ++j)
      prev[j] *= activate_grad(m.params.activation, input[j]);
  }
  return loss;
}

MlpGradients zero_gradients(const MlpModel& m) {
  MlpGradients g;
  for (const auto& layer : m.layers) {
    g.weights.emplace_back(layer.weights.size(), 0.0);
    g.bias.emplace_back(layer.bias.size(), 0.0);
  }
  return g;
}

void validate_params(const MlpParams& params) {
  for (int h : params.hidden)
    if (h < 1) fail(ErrorKind::Config, "hidden layer sizes must be >= 1");
  if (params.epochs < 1) fail(ErrorKind::Config, "epochs must be >= 1");
  if (params.batch < 1) fail(ErrorKind::Config, "batch must be >= 1");
  if (!(params.learning_rate > 0.0)) fail(ErrorKind::Config, "learning_rate must be > 0");
  if (!(params.momentum >= 0.0 && params.momentum < 1.0))
    fail(ErrorKind::Config, "momentum must lie in [0, 1)");
}

}  // namespace

MlpModel mlp_init(std::size_t dim, std::size_t num_classes, const MlpParams& params) {
  validate_params(params);
  if (dim == 0 || num_classes == 0)
    fail(ErrorKind::Config, "input and output sizes must be > 0");
  MlpModel m;
  m.params = params;
  m.scaler = Standardizer::identity(dim);
  std::vector<std::size_t> sizes{dim};
  for (int h : params.hidden) sizes.push_back(static_cast<std::size_t>(h));
  sizes.push_back(num_classes);

  std::mt19937_64 gen(params.seed);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    DenseLayer layer;
    layer.in = sizes[l];
    layer.out = sizes[l + 1];
    // He init for ReLU, Glorot otherwise.
    const double fan = params.activation == Activation::ReLU
                           ? 6.0 / static_cast<double>(layer.in)
                           : 6.0 / static_cast<double>(layer.in + layer.out);
    std::uniform_real_distribution<double> dist(-std::sqrt(fan), std::sqrt(fan));
    layer.weights.resize(layer.in * layer.out);
    for (double& w : layer.weights) w = dist(gen);
    layer.bias.assign(layer.out, 0.0);
    m.layers.push_back(std::move(layer));
  }
  return m;
}

std::vector<double> mlp_forward(const MlpModel& model, std::span<const double> x) {
  check_dimension(model.dim(), x.size());
  std::vector<std::vector<double>> acts;
  forward(model, model.scaler.apply(x), acts);
  return softmax(acts.back());
}

int mlp_predict(const MlpModel& model, std::span<const double> x) {
  check_dimension(model.dim(), x.size());
  std::vector<std::vector<double>> acts;
  forward(model, model.scaler.apply(x), acts);
  return argmax(acts.back());
}

MlpGradients mlp_gradients(const MlpModel& model, std::span<const double> rows,
                           std::span<const int> labels) {
  const std::size_t d = model.dim();
  if (labels.empty() || rows.size() != labels.size() * d)
    fail(ErrorKind::Shape, "rows must hold labels.size() * dim values");
  MlpGradients g = zero_gradients(model);
  std::vector<std::vector<double>> acts, deltas;
  std::vector<double> z(d);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    model.scaler.apply(rows.subspan(i * d, d), z);
    g.loss += accumulate(model, z, labels[i], acts, deltas, g);
  }
  const double inv = 1.0 / static_cast<double>(labels.size());
  g.loss *= inv;
  for (auto& w : g.weights)
    for (double& v : w) v *= inv;
  for (auto& b : g.bias)
    for (double& v : b) v *= inv;
  return g;
}

double mlp_loss(const MlpModel& model, std::span<const double> rows,
                std::span<const int> labels) {
  const std::size_t d = model.dim();
  if (labels.empty() || rows.size() != labels.size() * d)
    fail(ErrorKind::Shape, "rows must hold labels.size() * dim values");
  std::vector<std::vector<double>> acts;
  std::vector<double> z(d);
  double loss = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    model.scaler.apply(rows.subspan(i * d, d), z);
    forward(model, z, acts);
    loss += log_sum_exp(acts.back()) - acts.back()[static_cast<std::size_t>(labels[i])];
  }
  return loss / static_cast<double>(labels.size());
}

MlpModel mlp_fit(const LabeledDataset& data, const MlpParams& params) {
  if (data.empty()) fail(ErrorKind::Training, "cannot fit an MLP on an empty dataset");
  if (data.num_classes() < 2) fail(ErrorKind::Training, "an MLP needs at least two classes");
  MlpModel m = mlp_init(data.dim(), data.num_classes(), params);
  m.scaler = Standardizer::fit(data);

  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  std::vector<double> scaled(n * d);
  for (std::size_t i = 0; i < n; ++i)
    m.scaler.apply(data.row(i), std::span<double>(scaled).subspan(i * d, d));

  MlpGradients velocity = zero_gradients(m);
  MlpGradients grad = zero_gradients(m);
  std::vector<std::vector<double>> acts, deltas;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 gen(params.seed ^ 0x5bd1e995ULL);
  const auto batch = static_cast<std::size_t>(params.batch);

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), gen);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      for (auto& w : grad.weights) std::fill(w.begin(), w.end(), 0.0);
      for (auto& b : grad.bias) std::fill(b.begin(), b.end(), 0.0);
      for (std::size_t j = start; j < stop; ++j) {
        const std::size_t i = order[j];
        accumulate(m, std::span<const double>(scaled).subspan(i * d, d), data.label(i),
                   acts, deltas, grad);
      }
      const double step = -params.learning_rate / static_cast<double>(stop - start);
      for (std::size_t l = 0; l < m.layers.size(); ++l) {
        auto& vw = velocity.weights[l];
        auto& vb = velocity.bias[l];
        for (double& v : vw) v *= params.momentum;
        for (double& v : vb) v *= params.momentum;
        kernels::axpy(step, grad.weights[l], vw);
        kernels::axpy(step, grad.bias[l], vb);
        kernels::axpy(1.0, vw, m.layers[l].weights);
        kernels::axpy(1.0, vb, m.layers[l].bias);
      }
    }
  }
  return m;
}

}  // namespace faultnet
