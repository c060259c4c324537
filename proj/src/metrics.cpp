#include "pcasmote/metrics.hpp"

#include <cmath>

#include "pcasmote/errors.hpp"

namespace pcasmote {

namespace {

Rate ratio(long num, long den) {
  if (den == 0) return {0.0, false};
  return {static_cast<double>(num) / static_cast<double>(den), true};
}

void check_class(const ConfusionMatrix& cm, int c) {
  if (c < 0 || c >= cm.n_classes())
    throw ArgumentError("class index " + std::to_string(c) + " out of range for " + std::to_string(cm.n_classes()) +
                        " classes");
}

}  // namespace

ConfusionMatrix confusion_matrix(const std::vector<int>& actual, const std::vector<int>& predicted, int n_classes,
                                 std::vector<std::string> class_names) {
  if (actual.size() != predicted.size())
    throw ArgumentError("confusion_matrix: " + std::to_string(actual.size()) + " actual vs " +
                        std::to_string(predicted.size()) + " predicted labels");
  if (n_classes < 1) throw ArgumentError("confusion_matrix: need at least one class");
  ConfusionMatrix cm;
  cm.counts.setZero(n_classes, n_classes);
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const int a = actual[i];
    const int p = predicted[i];
    if (a < 0 || a >= n_classes || p < 0 || p >= n_classes)
      throw ArgumentError("confusion_matrix: label out of range at position " + std::to_string(i));
    ++cm.counts(a, p);
  }
  if (class_names.empty())
    for (int c = 0; c < n_classes; ++c) class_names.push_back(std::to_string(c));
  cm.class_names = std::move(class_names);
  return cm;
}

OneVsRest one_vs_rest(const ConfusionMatrix& cm, int c) {
  check_class(cm, c);
  OneVsRest r;
  r.tp = cm.counts(c, c);
  r.fn = cm.counts.row(c).sum() - r.tp;
  r.fp = cm.counts.col(c).sum() - r.tp;
  r.tn = cm.total() - r.tp - r.fn - r.fp;
  return r;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() <= 0) throw ArgumentError("accuracy: empty confusion matrix");
  return static_cast<double>(cm.correct()) / static_cast<double>(cm.total());
}

Rate fp_rate(const ConfusionMatrix& cm, int c) {
  const auto r = one_vs_rest(cm, c);
  return ratio(r.fp, r.tn + r.fp);
}

Rate recall(const ConfusionMatrix& cm, int c) {
  const auto r = one_vs_rest(cm, c);
  return ratio(r.tp, r.tp + r.fn);
}

Rate precision(const ConfusionMatrix& cm, int c) {
  const auto r = one_vs_rest(cm, c);
  return ratio(r.tp, r.tp + r.fp);
}

double weighted_average(const ConfusionMatrix& cm, const std::function<double(int)>& per_class_metric) {
  const double total = static_cast<double>(cm.total());
  if (total <= 0) throw ArgumentError("weighted_average: empty confusion matrix");
  double sum = 0;
  for (int c = 0; c < cm.n_classes(); ++c) sum += static_cast<double>(cm.counts.row(c).sum()) / total * per_class_metric(c);
  return sum;
}

double weighted_fp_rate(const ConfusionMatrix& cm) {
  return weighted_average(cm, [&](int c) { return fp_rate(cm, c).value; });
}
double weighted_recall(const ConfusionMatrix& cm) {
  return weighted_average(cm, [&](int c) { return recall(cm, c).value; });
}
double weighted_precision(const ConfusionMatrix& cm) {
  return weighted_average(cm, [&](int c) { return precision(cm, c).value; });
}

MetricRow metric_row(const ConfusionMatrix& cm, std::string method_name, long n_features) {
  MetricRow row;
  row.method_name = std::move(method_name);
  row.accuracy = accuracy(cm);
  row.fp_rate = weighted_fp_rate(cm);
  row.precision = weighted_precision(cm);
  row.recall = weighted_recall(cm);
  row.n_samples = cm.total();
  row.n_features = n_features;
  row.misclassified = static_cast<double>(cm.total() - cm.correct());
  for (int c = 0; c < cm.n_classes(); ++c) {
    ClassMetrics m{cm.class_names[static_cast<std::size_t>(c)], fp_rate(cm, c), precision(cm, c), recall(cm, c)};
    row.undefined_rates += !m.fp_rate.defined + !m.precision.defined + !m.recall.defined;
    row.per_class.push_back(std::move(m));
  }
  return row;
}

long misclassified_count(const MetricRow& row) {
  return row.n_samples - std::lround(row.accuracy * static_cast<double>(row.n_samples));
}

}  // namespace pcasmote
