#include <cctype>
#include <cmath>

#include "faultnet/error.hpp"
#include "faultnet/learning.hpp"

namespace faultnet {

std::string_view to_string(ModelKind k) noexcept {
  switch (k) {
    case ModelKind::DT: return "DT";
    case ModelKind::KNN: return "KNN";
    case ModelKind::SVM: return "SVM";
    case ModelKind::NN: return "NN";
    case ModelKind::ANN: return "ANN";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept {
  std::string upper;
  for (char c : text) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (ModelKind k : kAllModelKinds) {
    if (to_string(k) == upper) return k;
  }
  return std::nullopt;
}

LabeledDataset::LabeledDataset(std::size_t dim, std::vector<std::string> class_names)
    : dim_(dim), class_names_(std::move(class_names)) {
  if (dim_ == 0) fail(ErrorKind::Shape, "dataset dimension must be > 0");
}

void LabeledDataset::add(std::span<const double> x, int label) {
  check_dimension(dim_, x.size());
  if (label < 0 || static_cast<std::size_t>(label) >= class_names_.size())
    fail(ErrorKind::Label, "label " + std::to_string(label) + " outside " +
                               std::to_string(class_names_.size()) + " classes");
  values_.insert(values_.end(), x.begin(), x.end());
  labels_.push_back(label);
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(class_names_.size(), 0);
  for (int y : labels_) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

Standardizer Standardizer::fit(const LabeledDataset& data) {
  const std::size_t d = data.dim();
  Standardizer s = identity(d);
  if (data.empty()) return s;
  const double n = static_cast<double>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += x[j];
  }
  for (double& m : s.mean) m /= n;
  std::vector<double> ss(d, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double u = x[j] - s.mean[j];
      ss[j] += u * u;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(ss[j] / n);
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Standardizer Standardizer::identity(std::size_t dim) {
  return Standardizer{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

void Standardizer::apply(std::span<const double> x, std::span<double> out) const noexcept {
  for (std::size_t j = 0; j < mean.size(); ++j) out[j] = (x[j] - mean[j]) / scale[j];
}

void Standardizer::invert(std::span<const double> z, std::span<double> out) const noexcept {
  for (std::size_t j = 0; j < mean.size(); ++j) out[j] = z[j] * scale[j] + mean[j];
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  std::vector<double> out(mean.size());
  apply(x, out);
  return out;
}

void check_dimension(std::size_t expected, std::size_t got) {
  if (expected != got)
    fail(ErrorKind::Shape, "expected dimension " + std::to_string(expected) +
                               ", got " + std::to_string(got));
}

int argmax(std::span<const double> scores) noexcept {
  int best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace faultnet
