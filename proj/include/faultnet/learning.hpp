#pragma once
// Shared plumbing for the learners: the labeled sample matrix, per-feature
// standardization and the predictor interface the pipeline consumes.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace faultnet {

enum class ModelKind { DT, KNN, SVM, NN, ANN };

inline constexpr ModelKind kAllModelKinds[] = {ModelKind::DT, ModelKind::KNN,
                                               ModelKind::SVM, ModelKind::NN,
                                               ModelKind::ANN};

std::string_view to_string(ModelKind k) noexcept;
// Accepts "dt", "DT", "knn", ... ; nullopt otherwise.
std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept;

// Row-major samples with integer class labels indexing class_names.
class LabeledDataset {
 public:
  LabeledDataset(std::size_t dim, std::vector<std::string> class_names);

  // Throws ErrorKind::Shape on a dimension mismatch, ErrorKind::Label on an
  // out-of-range label.
  void add(std::span<const double> x, int label);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_classes() const noexcept { return class_names_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  int label(std::size_t i) const noexcept { return labels_[i]; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  std::span<const double> values() const noexcept { return values_; }

  // Per-class sample counts.
  std::vector<std::size_t> class_counts() const;

 private:
  std::size_t dim_;
  std::vector<std::string> class_names_;
  std::vector<double> values_;
  std::vector<int> labels_;
};

// Per-feature z-scoring. Constant features get scale 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const LabeledDataset& data);
  static Standardizer identity(std::size_t dim);

  std::size_t dim() const noexcept { return mean.size(); }
  void apply(std::span<const double> x, std::span<double> out) const noexcept;
  void invert(std::span<const double> z, std::span<double> out) const noexcept;
  std::vector<double> apply(std::span<const double> x) const;
};

// What a pipeline stage needs from a trained learner.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::size_t dim() const = 0;
  virtual const std::vector<std::string>& class_names() const = 0;
  // Throws ErrorKind::Shape when x.size() != dim().
  virtual int predict(std::span<const double> x) const = 0;
};

void check_dimension(std::size_t expected, std::size_t got);

// Lowest index among the maxima.
int argmax(std::span<const double> scores) noexcept;

}  // namespace faultnet
