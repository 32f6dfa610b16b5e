#include "faultnet/knn.hpp"

#include <algorithm>
#include <cmath>

#include "faultnet/error.hpp"
#include "faultnet/kernels.hpp"

namespace faultnet {

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  check_dimension(x.size(), y.size());
  return std::sqrt(kernels::squared_distance(x, y));
}

KnnModel knn_fit(const LabeledDataset& data, const KnnParams& params) {
  if (data.empty()) fail(ErrorKind::Training, "cannot fit KNN on an empty dataset");
  if (params.k < 1) fail(ErrorKind::Parameter, "k must be >= 1");
  KnnModel model;
  model.params = params;
  model.dim = data.dim();
  model.num_classes = data.num_classes();
  model.scaler = params.standardize ? Standardizer::fit(data)
                                    : Standardizer::identity(data.dim());
  model.exemplars.resize(data.size() * data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    model.scaler.apply(data.row(i),
                       std::span<double>(model.exemplars).subspan(i * model.dim, model.dim));
  }
  model.labels = data.labels();
  return model;
}

std::vector<std::size_t> knn_neighbors(const KnnModel& model,
                                       std::span<const double> x, int k) {
  check_dimension(model.dim, x.size());
  if (k < 1 || static_cast<std::size_t>(k) > model.size())
    fail(ErrorKind::Parameter, "k = " + std::to_string(k) + " outside [1, " +
                                   std::to_string(model.size()) + "]");
  const std::vector<double> z = model.scaler.apply(x);

  // Squared distances order the same way as distances.
  std::vector<std::pair<double, std::size_t>> dist(model.size());
  for (std::size_t i = 0; i < model.size(); ++i)
    dist[i] = {kernels::squared_distance(z, model.exemplar(i)), i};
  const auto kk = static_cast<std::ptrdiff_t>(k);
  std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());

  std::vector<std::size_t> out(static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = dist[j].second;
  return out;
}

int knn_predict(const KnnModel& model, std::span<const double> x, int k) {
  const auto nearest = knn_neighbors(model, x, k);
  std::vector<double> votes(model.num_classes, 0.0);
  for (std::size_t i : nearest) votes[static_cast<std::size_t>(model.labels[i])] += 1.0;
  return argmax(votes);
}

}  // namespace faultnet
