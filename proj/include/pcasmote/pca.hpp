#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pcasmote/dataset.hpp"
#include "pcasmote/linalg.hpp"

namespace pcasmote {

enum class PcaMode { kCovariance, kCorrelation };

std::optional<PcaMode> parse_pca_mode(std::string_view s);
std::string_view to_string(PcaMode m);

/// Fitted linear reducer: y = ((x - mean) / scale) * components.
struct PcaModel {
  VectorXr mean;
  VectorXr scale;        // all ones in covariance mode
  MatrixXr components;   // n_features x retained, orthonormal columns
  VectorXr eigenvalues;  // full spectrum, descending
  int retained = 0;
  double variance_threshold = 0.9;
  PcaMode mode = PcaMode::kCorrelation;

  Eigen::Index n_inputs() const { return mean.size(); }

  /// Fraction of total eigenvalue mass held by the first `m` components.
  double cumulative_variance(int m) const;
};

/// Smallest m >= 1 whose cumulative variance ratio reaches `threshold`.
/// Comparisons allow 1e-12 slack so that threshold 1.0 stops at the rank
/// instead of chasing round-off in trailing near-zero eigenvalues.
int components_for_threshold(const VectorXr& eigenvalues, double threshold);

PcaModel fit_pca(const Dataset& ds, double threshold = 0.9, PcaMode mode = PcaMode::kCorrelation,
                 const JacobiOptions& jacobi = {});

template <typename Derived>
MatrixXr project(const PcaModel& model, const Eigen::MatrixBase<Derived>& x) {
  if (x.cols() != model.n_inputs())
    throw ArgumentError("pca transform: input has " + std::to_string(x.cols()) + " features, model expects " +
                        std::to_string(model.n_inputs()));
  const MatrixXr standardized =
      (x.rowwise() - model.mean.transpose()).array().rowwise() / model.scale.transpose().array();
  return standardized * model.components;
}

/// Projects every sample; labels and class names pass through and features
/// are renamed PC1..PCm.
Dataset transform(const PcaModel& model, const Dataset& ds);

}  // namespace pcasmote
