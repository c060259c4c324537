#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pcasmote/config.hpp"
#include "pcasmote/dataset.hpp"
#include "pcasmote/metrics.hpp"

namespace pcasmote {

/// Optional per-fold hook: receives the raw train/test split and returns the
/// datasets the classifier is actually fit on and scored against.
using FoldPrepare =
    std::function<std::pair<Dataset, Dataset>(const Dataset& train, const Dataset& test, std::uint64_t seed, int fold)>;

struct RangeStat {
  double min = 0, max = 0, median = 0;
};

struct Evaluation {
  MetricRow mean;  // arithmetic mean over seeds
  RangeStat accuracy, fp_rate, precision, recall, misclassified;
  std::vector<MetricRow> per_seed;
  std::vector<ConfusionMatrix> confusion;  // pooled, one per seed
};

/// Cross-validates Gaussian naive Bayes on `ds` once per seed, pooling the
/// held-out predictions of every fold into one confusion matrix per seed.
Evaluation evaluate_dataset(const Dataset& ds, const EvalConfig& eval, const std::string& method_name,
                            const FoldPrepare& prepare = {});

inline const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"Initial", "PCA", "SMOTE1", "SMOTE2", "SMOTE3"};
  return names;
}

struct StepResult {
  std::string method_name;
  long n_features = 0;
  long n_samples = 0;
  std::vector<int> class_counts;
  Evaluation evaluation;
};

struct PcaSummary {
  int retained = 0;             // configured mode
  int retained_covariance = 0;  // comparison counts for both modes
  int retained_correlation = 0;
  double coverage = 0;          // cumulative variance of the retained components
  std::vector<double> eigenvalues;
};

struct ExperimentReport {
  static constexpr int kSchemaVersion = 1;

  ExperimentConfig config;
  std::vector<StepResult> steps;
  PcaSummary pca;
  std::string toolkit_version;
  std::string dataset_checksum;
  std::string dataset_source;
  std::size_t missing_cells = 0;
};

/// Full flow on an already-loaded raw dataset: impute, Initial, PCA, then one
/// step per SMOTE run in cfg.smote_order. `checksum` is recorded verbatim.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const Dataset& raw, std::string checksum);

/// Loads cfg.dataset_path and calls run_experiment.
ExperimentReport run_experiment_file(const ExperimentConfig& cfg);

std::string report_json(const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);
std::string summary_csv(const ExperimentReport& report);

struct FigureData {
  std::string file_stem;
  std::string title;
  std::string metric;
};

/// One plot-data file per metric: accuracy, fp_rate, precision, recall, misclassified.
const std::vector<FigureData>& figures();
std::string figure_csv(const ExperimentReport& report, const FigureData& fig);
std::string figure_svg(const ExperimentReport& report, const FigureData& fig);

}  // namespace pcasmote
