#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace pcasmote {

/// Rows are actual classes, columns predicted classes.
struct ConfusionMatrix {
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> counts;
  std::vector<std::string> class_names;

  int n_classes() const { return static_cast<int>(counts.rows()); }
  long total() const { return counts.sum(); }
  long correct() const { return counts.trace(); }
};

struct OneVsRest {
  long tp = 0, fp = 0, fn = 0, tn = 0;
};

/// A rate together with whether its denominator was nonzero. Undefined rates
/// carry value 0.
struct Rate {
  double value = 0;
  bool defined = true;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& actual, const std::vector<int>& predicted, int n_classes,
                                 std::vector<std::string> class_names = {});

OneVsRest one_vs_rest(const ConfusionMatrix& cm, int c);

double accuracy(const ConfusionMatrix& cm);
Rate fp_rate(const ConfusionMatrix& cm, int c);
Rate recall(const ConfusionMatrix& cm, int c);
Rate precision(const ConfusionMatrix& cm, int c);

/// sum_c (row_c / total) * metric(c).
double weighted_average(const ConfusionMatrix& cm, const std::function<double(int)>& per_class_metric);

double weighted_fp_rate(const ConfusionMatrix& cm);
double weighted_recall(const ConfusionMatrix& cm);
double weighted_precision(const ConfusionMatrix& cm);

struct ClassMetrics {
  std::string class_name;
  Rate fp_rate, precision, recall;
};

struct MetricRow {
  std::string method_name;
  double accuracy = 0;
  double fp_rate = 0;
  double precision = 0;
  double recall = 0;
  double misclassified = 0;  // integral for a single evaluation; a mean when aggregated
  long n_samples = 0;
  long n_features = 0;
  std::vector<ClassMetrics> per_class;
  int undefined_rates = 0;
};

MetricRow metric_row(const ConfusionMatrix& cm, std::string method_name, long n_features);

/// n_samples minus the trace of the pooled confusion matrix behind `row`.
long misclassified_count(const MetricRow& row);

}  // namespace pcasmote
