#pragma once

#include <string>
#include <vector>

#include "pcasmote/dataset.hpp"

namespace pcasmote {

inline constexpr double kNbStdFloor = 1e-6;

/// Gaussian naive Bayes: class c scores log prior_c + sum_f log N(x_f; mean_cf, std_cf).
struct NbModel {
  VectorXr priors;  // Laplace-smoothed: (count_c + 1) / (N + n_classes)
  MatrixXr means;   // n_classes x n_features
  MatrixXr stds;    // n_classes x n_features, every entry >= std_floor
  std::vector<std::string> class_names;
  double std_floor = kNbStdFloor;

  int n_classes() const { return static_cast<int>(priors.size()); }
  Eigen::Index n_features() const { return means.cols(); }
};

NbModel fit_nb(const Dataset& ds, double std_floor = kNbStdFloor);

VectorXr log_posterior(const NbModel& model, const VectorXr& x);

/// exp-normalized log_posterior.
VectorXr posterior(const NbModel& model, const VectorXr& x);

/// argmax of log_posterior, lowest index on ties.
int predict(const NbModel& model, const VectorXr& x);

std::vector<int> predict_all(const NbModel& model, const MatrixXr& x);

}  // namespace pcasmote
