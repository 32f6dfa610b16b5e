#pragma once
// Classification metrics: confusion matrix, accuracy and macro-averaged
// precision/recall/F1, reported as percentages.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace faultnet {

struct ConfusionMatrix {
  std::vector<std::string> class_names;
  // counts[truth][pred]
  std::vector<std::vector<std::size_t>> counts;

  std::size_t total() const noexcept;
  std::size_t trace() const noexcept;
  std::size_t support(std::size_t cls) const noexcept;    // row sum
  std::size_t predicted(std::size_t cls) const noexcept;  // column sum
};

struct ClassMetrics {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct MetricsReport {
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<ClassMetrics> per_class;
  ConfusionMatrix confusion;
  // Classes that were in scope but never predicted (precision set to 0).
  std::vector<std::string> warnings;
};

// Macro averages run over the classes that occur in the truth or in the
// predictions. A class with no predictions gets precision 0 and a warning.
// Throws ErrorKind::Shape on length mismatch or empty input, ErrorKind::Label
// on an index outside class_names.
MetricsReport compute_metrics(std::span<const int> preds, std::span<const int> truth,
                              const std::vector<std::string>& class_names);

// Fixed-width table with the four metric columns, one row per entry.
struct MetricsRow {
  std::string label;
  MetricsReport report;
};
std::string metrics_table(const std::string& title, std::span<const MetricsRow> rows);
std::string confusion_table(const ConfusionMatrix& cm);

}  // namespace faultnet
