#pragma once
// k-nearest-neighbour classifier over stored exemplars.

#include <span>
#include <vector>

#include "faultnet/learning.hpp"

namespace faultnet {

// sqrt(sum_j (x_j - y_j)^2). Throws ErrorKind::Shape on a size mismatch.
double euclidean_distance(std::span<const double> x, std::span<const double> y);

struct KnnParams {
  int k = 5;
  // Distances are taken after per-feature z-scoring fitted on the exemplars.
  bool standardize = true;
};

struct KnnModel {
  KnnParams params;
  Standardizer scaler;
  std::size_t dim = 0;
  std::size_t num_classes = 0;
  std::vector<double> exemplars;  // row-major, already scaled
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> exemplar(std::size_t i) const noexcept {
    return {exemplars.data() + i * dim, dim};
  }
};

// Throws ErrorKind::Training for an empty dataset.
KnnModel knn_fit(const LabeledDataset& data, const KnnParams& params);

// Majority vote over the k nearest exemplars. Distance ties go to the earlier
// exemplar, vote ties to the smallest class index. Throws
// ErrorKind::Parameter unless 1 <= k <= model.size().
int knn_predict(const KnnModel& model, std::span<const double> x, int k);

// Indices of the k nearest exemplars, nearest first.
std::vector<std::size_t> knn_neighbors(const KnnModel& model,
                                       std::span<const double> x, int k);

}  // namespace faultnet
