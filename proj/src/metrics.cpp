#include "faultnet/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "faultnet/error.hpp"

namespace faultnet {

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t n = 0;
  for (const auto& row : counts)
    for (std::size_t c : row) n += c;
  return n;
}

std::size_t ConfusionMatrix::trace() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) n += counts[i][i];
  return n;
}

std::size_t ConfusionMatrix::support(std::size_t cls) const noexcept {
  std::size_t n = 0;
  for (std::size_t c : counts[cls]) n += c;
  return n;
}

std::size_t ConfusionMatrix::predicted(std::size_t cls) const noexcept {
  std::size_t n = 0;
  for (const auto& row : counts) n += row[cls];
  return n;
}

MetricsReport compute_metrics(std::span<const int> preds, std::span<const int> truth,
                              const std::vector<std::string>& class_names) {
  if (preds.size() != truth.size())
    fail(ErrorKind::Shape, "predictions and truth differ in length");
  if (preds.empty()) fail(ErrorKind::Shape, "cannot score an empty prediction set");
  const std::size_t k = class_names.size();
  auto check = [k](int c) {
    if (c < 0 || static_cast<std::size_t>(c) >= k)
      fail(ErrorKind::Label, "class index " + std::to_string(c) + " is not in the dictionary");
    return static_cast<std::size_t>(c);
  };

  MetricsReport r;
  r.confusion.class_names = class_names;
  r.confusion.counts.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < preds.size(); ++i) ++r.confusion.counts[check(truth[i])][check(preds[i])];

  const ConfusionMatrix& cm = r.confusion;
  r.accuracy = 100.0 * static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
  std::size_t in_scope = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t support = cm.support(c);
    const std::size_t predicted = cm.predicted(c);
    if (support == 0 && predicted == 0) continue;
    ++in_scope;
    ClassMetrics m;
    m.name = class_names[c];
    m.support = support;
    const auto tp = static_cast<double>(cm.counts[c][c]);
    if (predicted == 0)
      r.warnings.push_back("class '" + m.name + "' was never predicted; precision set to 0");
    else
      m.precision = 100.0 * tp / static_cast<double>(predicted);
    if (support > 0) m.recall = 100.0 * tp / static_cast<double>(support);
    if (m.precision + m.recall > 0.0)
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.macro_f1 += m.f1;
    r.per_class.push_back(std::move(m));
  }
  const auto n = static_cast<double>(in_scope);
  r.macro_precision /= n;
  r.macro_recall /= n;
  r.macro_f1 /= n;
  return r;
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string metrics_table(const std::string& title, std::span<const MetricsRow> rows) {
  std::size_t width = 5;
  for (const auto& row : rows) width = std::max(width, row.label.size());
  std::ostringstream out;
  out << title << "\n";
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size(), ' '); };
  out << pad("Model") << "  Accuracy  Precision    Recall  F1-Score\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << pad(row.label) << fmt("  %8.4f", r.accuracy) << fmt("  %9.4f", r.macro_precision)
        << fmt("  %8.4f", r.macro_recall) << fmt("  %8.4f", r.macro_f1) << "\n";
  }
  return out.str();
}

std::string confusion_table(const ConfusionMatrix& cm) {
  std::size_t width = 5;
  for (const auto& name : cm.class_names) width = std::max(width, name.size());
  std::ostringstream out;
  auto cell = [&](const std::string& s) {
    return std::string(width - std::min(width, s.size()), ' ') + s;
  };
  out << cell("truth") << " |";
  for (const auto& name : cm.class_names) out << " " << cell(name);
  out << "\n";
  for (std::size_t i = 0; i < cm.counts.size(); ++i) {
    out << cell(cm.class_names[i]) << " |";
    for (std::size_t c : cm.counts[i]) out << " " << cell(std::to_string(c));
    out << "\n";
  }
  return out.str();
}

}  // namespace faultnet
