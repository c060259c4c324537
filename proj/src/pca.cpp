#include "pcasmote/pca.hpp"

namespace pcasmote {

namespace {
constexpr double kCoverageSlack = 1e-12;
}

std::optional<PcaMode> parse_pca_mode(std::string_view s) {
  if (s == "covariance") return PcaMode::kCovariance;
  if (s == "correlation") return PcaMode::kCorrelation;
  return std::nullopt;
}

std::string_view to_string(PcaMode m) { return m == PcaMode::kCovariance ? "covariance" : "correlation"; }

double PcaModel::cumulative_variance(int m) const {
  const double total = eigenvalues.sum();
  if (total <= 0) return 1.0;
  return eigenvalues.head(m).sum() / total;
}

int components_for_threshold(const VectorXr& eigenvalues, double threshold) {
  const auto n = static_cast<int>(eigenvalues.size());
  const double total = eigenvalues.sum();
  if (n == 0) return 0;
  if (!(total > 0)) return 1;
  double running = 0;
  for (int m = 1; m <= n; ++m) {
    running += eigenvalues(m - 1);
    if (running / total + kCoverageSlack >= threshold) return m;
  }
  return n;
}

PcaModel fit_pca(const Dataset& ds, double threshold, PcaMode mode, const JacobiOptions& jacobi) {
  if (ds.n_samples() < 2)
    throw ArgumentError("fit_pca: need at least 2 samples, got " + std::to_string(ds.n_samples()));
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw ArgumentError("fit_pca: variance threshold must be in (0, 1], got " + std::to_string(threshold));
  if (ds.missing_count() != 0) throw ArgumentError("fit_pca: dataset still has missing cells; impute first");

  PcaModel model;
  model.mode = mode;
  model.variance_threshold = threshold;
  model.mean = mean_vector(ds.features);
  MatrixXr scatter;
  if (mode == PcaMode::kCorrelation) {
    model.scale = floored_std(ds.features);
    scatter = correlation_matrix(ds.features);
  } else {
    model.scale = VectorXr::Ones(ds.n_features());
    scatter = covariance_matrix(ds.features);
  }
  const auto eig = jacobi_eigen(scatter, jacobi);
  model.eigenvalues = eig.eigenvalues;
  model.retained = components_for_threshold(eig.eigenvalues, threshold);
  model.components = eig.eigenvectors.leftCols(model.retained);
  return model;
}

Dataset transform(const PcaModel& model, const Dataset& ds) {
  Dataset out;
  out.features = project(model, ds.features);
  out.labels = ds.labels;
  out.class_names = ds.class_names;
  for (int j = 1; j <= model.retained; ++j) out.feature_names.push_back("PC" + std::to_string(j));
  out.provenance = ds.provenance + "|pca";
  return out;
}

}  // namespace pcasmote
