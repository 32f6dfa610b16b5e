#include "faultnet/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "faultnet/error.hpp"
#include "faultnet/hash.hpp"
#include "faultnet/kernels.hpp"

namespace faultnet {

double svm_objective(std::span<const double> w, double b, double C,
                     std::span<const double> rows, std::span<const int> y,
                     std::size_t dim) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double f = kernels::dot(w, rows.subspan(i * dim, dim)) + b;
    hinge += std::max(0.0, 1.0 - static_cast<double>(y[i]) * f);
  }
  return 0.5 * kernels::dot(w, w) + C * hinge;
}

namespace {

struct BinaryFit {
  std::vector<double> w;
  double b = 0.0;
  std::vector<double> objective;
};

// Per-sample loss (lambda/2)|w|^2 + hinge_i with lambda = 1/(C n) sums to the
// primal objective divided by C. Step size decays as lr / sqrt(1 + epoch);
// each epoch reports and keeps the average of its iterates.
BinaryFit fit_binary(std::span<const double> rows, std::span<const int> y,
                     std::size_t dim, const SvmParams& params, std::uint64_t seed) {
  const std::size_t n = y.size();
  const double lambda = 1.0 / (params.C * static_cast<double>(n));
  BinaryFit fit;
  fit.w.assign(dim, 0.0);
  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<double> w_sum(dim);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 gen(seed);

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), gen);
    const double eta = params.learning_rate / std::sqrt(1.0 + epoch);
    std::fill(w_sum.begin(), w_sum.end(), 0.0);
    double b_sum = 0.0;
    for (std::size_t i : order) {
      const auto x = rows.subspan(i * dim, dim);
      const double yi = static_cast<double>(y[i]);
      const double margin = yi * (kernels::dot(w, x) + b);
      for (double& wj : w) wj *= (1.0 - eta * lambda);
      if (margin < 1.0) {
        kernels::axpy(eta * yi, x, w);
        b += eta * yi;
      }
      kernels::axpy(1.0, w, w_sum);
      b_sum += b;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < dim; ++j) fit.w[j] = w_sum[j] * inv_n;
    fit.b = b_sum * inv_n;
    fit.objective.push_back(svm_objective(fit.w, fit.b, params.C, rows, y, dim));
  }
  return fit;
}

}  // namespace

SvmModel svm_fit(const LabeledDataset& data, const SvmParams& params) {
  if (!(params.C > 0.0)) fail(ErrorKind::Parameter, "C must be > 0");
  if (!(params.learning_rate > 0.0)) fail(ErrorKind::Parameter, "learning_rate must be > 0");
  if (params.epochs < 1) fail(ErrorKind::Parameter, "epochs must be >= 1");
  if (data.empty()) fail(ErrorKind::Training, "cannot fit an SVM on an empty dataset");
  const std::size_t k = data.num_classes();
  if (k < 2) fail(ErrorKind::Training, "an SVM needs at least two classes");

  SvmModel model;
  model.params = params;
  model.dim = data.dim();
  model.scaler = Standardizer::fit(data);
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  std::vector<double> rows(n * d);
  for (std::size_t i = 0; i < n; ++i)
    model.scaler.apply(data.row(i), std::span<double>(rows).subspan(i * d, d));

  model.weights.assign(k, std::vector<double>(d, 0.0));
  model.bias.assign(k, 0.0);
  std::vector<int> y(n);
  auto fit_class = [&](std::size_t c) {
    for (std::size_t i = 0; i < n; ++i)
      y[i] = static_cast<std::size_t>(data.label(i)) == c ? 1 : -1;
    return fit_binary(rows, y, d, params,
                      mix_seed(params.seed, "svm/" + std::to_string(c)));
  };

  if (k == 2) {
    BinaryFit fit = fit_class(1);
    model.weights[1] = fit.w;
    model.bias[1] = fit.b;
    for (std::size_t j = 0; j < d; ++j) model.weights[0][j] = -fit.w[j];
    model.bias[0] = -fit.b;
    model.objective_history = std::move(fit.objective);
    return model;
  }

  model.objective_history.assign(static_cast<std::size_t>(params.epochs), 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    BinaryFit fit = fit_class(c);
    model.weights[c] = std::move(fit.w);
    model.bias[c] = fit.b;
    for (std::size_t e = 0; e < fit.objective.size(); ++e)
      model.objective_history[e] += fit.objective[e];
  }
  return model;
}

std::vector<double> svm_decision_scaled(const SvmModel& model,
                                        std::span<const double> z) {
  check_dimension(model.dim, z.size());
  std::vector<double> scores(model.num_classes());
  for (std::size_t c = 0; c < scores.size(); ++c)
    scores[c] = kernels::dot(model.weights[c], z) + model.bias[c];
  return scores;
}

std::vector<double> svm_decision(const SvmModel& model, std::span<const double> x) {
  check_dimension(model.dim, x.size());
  return svm_decision_scaled(model, model.scaler.apply(x));
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
  return argmax(svm_decision(model, x));
}

}  // namespace faultnet
