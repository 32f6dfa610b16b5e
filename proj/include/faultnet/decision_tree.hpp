#pragma once
// Greedy CART classifier with Gini impurity.

#include <span>
#include <vector>

#include "faultnet/learning.hpp"

namespace faultnet {

// sum_i p_i (1 - p_i). Throws ErrorKind::Domain unless p is a probability
// vector (p_i >= 0, sum within 1e-9 of 1).
double gini_impurity(std::span<const double> p);

struct TreeParams {
  int max_depth = 12;
  int min_leaf = 2;
  int n_thresholds = 32;  // candidate thresholds per feature per node
};

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;
  int left = -1;   // taken when x[feature] < threshold
  int right = -1;
  int label = 0;   // majority class (lowest index on ties)
  std::vector<double> distribution;  // class fractions of the node's samples

  bool is_leaf() const noexcept { return feature < 0; }
};

struct DecisionTree {
  TreeParams params;
  std::size_t dim = 0;
  std::size_t num_classes = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int predict(std::span<const double> x) const;
  // Indices of the nodes visited from root to leaf.
  std::vector<int> path(std::span<const double> x) const;
  int depth() const;
};

// Throws ErrorKind::Training for an empty dataset, ErrorKind::Parameter for
// non-positive parameters.
DecisionTree dt_fit(const LabeledDataset& data, const TreeParams& params);

}  // namespace faultnet
