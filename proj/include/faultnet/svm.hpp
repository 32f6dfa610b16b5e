#pragma once
// Linear SVM trained by stochastic subgradient descent on
//   1/2 |w|^2 + C sum_i max(0, 1 - y_i (w . x_i + b)),
// one-vs-rest for more than two classes.

#include <cstdint>
#include <span>
#include <vector>

#include "faultnet/learning.hpp"

namespace faultnet {

struct SvmParams {
  double C = 1.0;
  int epochs = 40;
  double learning_rate = 0.05;
  std::uint64_t seed = 7;
};

struct SvmModel {
  SvmParams params;
  Standardizer scaler;
  std::size_t dim = 0;
  // One (w, b) per class. A two-class model is trained once for class 1 and
  // stores class 0 as its negation, so score_0 = -score_1.
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  // Objective of the epoch-averaged iterate after each epoch, summed over the
  // one-vs-rest problems.
  std::vector<double> objective_history;

  std::size_t num_classes() const noexcept { return bias.size(); }
};

// Throws ErrorKind::Parameter for C <= 0, learning_rate <= 0 or epochs < 1,
// ErrorKind::Training for an empty dataset or fewer than two classes.
SvmModel svm_fit(const LabeledDataset& data, const SvmParams& params);

// score_c = w_c . x~ + b_c on the standardized input.
std::vector<double> svm_decision(const SvmModel& model, std::span<const double> x);

// Scores for an already standardized input.
std::vector<double> svm_decision_scaled(const SvmModel& model,
                                        std::span<const double> z);

int svm_predict(const SvmModel& model, std::span<const double> x);

// The primal objective of (w, b) for the +1/-1 labelling y on standardized rows.
double svm_objective(std::span<const double> w, double b, double C,
                     std::span<const double> rows, std::span<const int> y,
                     std::size_t dim);

}  // namespace faultnet
