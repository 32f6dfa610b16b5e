#include "faultnet/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "faultnet/error.hpp"

namespace faultnet {

double gini_impurity(std::span<const double> p) {
  double total = 0.0;
  for (double pi : p) {
    if (!(pi >= 0.0)) fail(ErrorKind::Domain, "probabilities must be >= 0");
    total += pi;
  }
  if (p.empty() || std::abs(total - 1.0) > 1e-9)
    fail(ErrorKind::Domain, "probabilities must sum to 1");
  double g = 0.0;
  for (double pi : p) g += pi * (1.0 - pi);
  return g;
}

namespace {

double gini_of_counts(std::span<const std::size_t> counts, std::size_t n) {
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  double g = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / nd;
    g += p * (1.0 - p);
  }
  return g;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& data, const TreeParams& params)
      : data_(data), params_(params), k_(data.num_classes()) {}

  DecisionTree build() {
    DecisionTree tree;
    tree.params = params_;
    tree.dim = data_.dim();
    tree.num_classes = k_;
    std::vector<std::size_t> idx(data_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    grow(tree, idx, 0);
    return tree;
  }

 private:
  int grow(DecisionTree& tree, const std::vector<std::size_t>& idx, int depth) {
    std::vector<std::size_t> counts(k_, 0);
    for (std::size_t i : idx) ++counts[static_cast<std::size_t>(data_.label(i))];

    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    {
      TreeNode& node = tree.nodes.back();
      node.distribution.resize(k_);
      const double n = static_cast<double>(idx.size());
      for (std::size_t c = 0; c < k_; ++c)
        node.distribution[c] = static_cast<double>(counts[c]) / n;
      node.label = argmax(node.distribution);
    }

    const double parent = gini_of_counts(counts, idx.size());
    const bool stop = depth >= params_.max_depth || parent == 0.0 ||
                      idx.size() < 2 * static_cast<std::size_t>(params_.min_leaf);
    if (stop) return node_id;

    const Split best = find_split(idx, parent);
    if (best.feature < 0) return node_id;

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx) {
      (data_.row(i)[static_cast<std::size_t>(best.feature)] < best.threshold ? left : right)
          .push_back(i);
    }
    const int l = grow(tree, left, depth + 1);
    const int r = grow(tree, right, depth + 1);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = r;
    return node_id;
  }

  // Candidate thresholds are midpoints between consecutive distinct values,
  // thinned to n_thresholds evenly spaced picks. The first strictly better
  // candidate wins, so ties go to the lowest feature, then lowest threshold.
  Split find_split(const std::vector<std::size_t>& idx, double parent) const {
    Split best;
    best.impurity = parent;
    const std::size_t n = idx.size();
    const std::size_t min_leaf = static_cast<std::size_t>(params_.min_leaf);
    std::vector<std::pair<double, int>> column(n);
    std::vector<double> mids;
    std::vector<std::size_t> left(k_), right(k_);

    for (std::size_t f = 0; f < data_.dim(); ++f) {
      for (std::size_t j = 0; j < n; ++j)
        column[j] = {data_.row(idx[j])[f], data_.label(idx[j])};
      std::sort(column.begin(), column.end());

      mids.clear();
      for (std::size_t j = 1; j < n; ++j) {
        if (column[j].first != column[j - 1].first)
          mids.push_back(0.5 * (column[j - 1].first + column[j].first));
      }
      if (mids.empty()) continue;
      const std::size_t cap = static_cast<std::size_t>(params_.n_thresholds);
      if (mids.size() > cap) {
        std::vector<double> thinned(cap);
        for (std::size_t c = 0; c < cap; ++c) {
          const std::size_t pick = ((2 * c + 1) * mids.size()) / (2 * cap);
          thinned[c] = mids[pick];
        }
        mids.swap(thinned);
      }

      std::fill(left.begin(), left.end(), 0);
      std::fill(right.begin(), right.end(), 0);
      for (const auto& [v, y] : column) ++right[static_cast<std::size_t>(y)];
      std::size_t pos = 0;
      for (double thr : mids) {
        while (pos < n && column[pos].first < thr) {
          const auto y = static_cast<std::size_t>(column[pos].second);
          ++left[y];
          --right[y];
          ++pos;
        }
        const std::size_t nl = pos;
        const std::size_t nr = n - pos;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double w = (static_cast<double>(nl) * gini_of_counts(left, nl) +
                          static_cast<double>(nr) * gini_of_counts(right, nr)) /
                         static_cast<double>(n);
        if (w < best.impurity) {
          best.impurity = w;
          best.feature = static_cast<int>(f);
          best.threshold = thr;
        }
      }
    }
    return best;
  }

  const LabeledDataset& data_;
  TreeParams params_;
  std::size_t k_;
};

}  // namespace

DecisionTree dt_fit(const LabeledDataset& data, const TreeParams& params) {
  if (data.empty()) fail(ErrorKind::Training, "cannot fit a tree on an empty dataset");
  if (params.max_depth < 0 || params.min_leaf < 1 || params.n_thresholds < 1)
    fail(ErrorKind::Parameter,
         "tree needs max_depth >= 0, min_leaf >= 1, n_thresholds >= 1");
  return TreeBuilder(data, params).build();
}

int DecisionTree::predict(std::span<const double> x) const {
  check_dimension(dim, x.size());
  int id = 0;
  while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
    const TreeNode& node = nodes[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left : node.right;
  }
  return nodes[static_cast<std::size_t>(id)].label;
}

std::vector<int> DecisionTree::path(std::span<const double> x) const {
  check_dimension(dim, x.size());
  std::vector<int> visited{0};
  int id = 0;
  while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
    const TreeNode& node = nodes[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left : node.right;
    visited.push_back(id);
  }
  return visited;
}

int DecisionTree::depth() const {
  // Nodes are stored in preorder; recompute depths by walking children.
  std::vector<int> d(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

}  // namespace faultnet
