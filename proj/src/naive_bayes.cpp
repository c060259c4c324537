#include "pcasmote/naive_bayes.hpp"

#include <cmath>
#include <numbers>

namespace pcasmote {

NbModel fit_nb(const Dataset& ds, double std_floor) {
  if (ds.n_samples() == 0) throw ArgumentError("fit_nb: empty dataset");
  if (ds.n_features() < 1) throw ArgumentError("fit_nb: dataset has no features");
  const int n_classes = ds.n_classes();
  const auto counts = class_counts(ds);
  for (int c = 0; c < n_classes; ++c)
    if (counts[static_cast<std::size_t>(c)] == 0)
      throw ArgumentError("fit_nb: class " + ds.class_names[static_cast<std::size_t>(c)] + " has no training samples");

  NbModel m;
  m.class_names = ds.class_names;
  m.std_floor = std_floor;
  m.priors.resize(n_classes);
  m.means = MatrixXr::Zero(n_classes, ds.n_features());
  m.stds = MatrixXr::Constant(n_classes, ds.n_features(), std_floor);

  const double denom = static_cast<double>(ds.n_samples() + n_classes);
  for (int c = 0; c < n_classes; ++c) m.priors(c) = (counts[static_cast<std::size_t>(c)] + 1) / denom;

  for (Eigen::Index r = 0; r < ds.n_samples(); ++r) m.means.row(ds.labels[static_cast<std::size_t>(r)]) += ds.features.row(r);
  for (int c = 0; c < n_classes; ++c) m.means.row(c) /= counts[static_cast<std::size_t>(c)];

  MatrixXr ss = MatrixXr::Zero(n_classes, ds.n_features());
  for (Eigen::Index r = 0; r < ds.n_samples(); ++r) {
    const int c = ds.labels[static_cast<std::size_t>(r)];
    ss.row(c) += (ds.features.row(r) - m.means.row(c)).array().square().matrix();
  }
  for (int c = 0; c < n_classes; ++c) {
    const int n_c = counts[static_cast<std::size_t>(c)];
    if (n_c < 2) continue;
    m.stds.row(c) = (ss.row(c) / (n_c - 1)).cwiseSqrt().cwiseMax(std_floor);
  }
  return m;
}

VectorXr log_posterior(const NbModel& model, const VectorXr& x) {
  if (x.size() != model.n_features())
    throw ArgumentError("naive bayes: input has " + std::to_string(x.size()) + " features, model expects " +
                        std::to_string(model.n_features()));
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  VectorXr scores(model.n_classes());
  for (int c = 0; c < model.n_classes(); ++c) {
    const auto z = ((x.transpose() - model.means.row(c)).array() / model.stds.row(c).array());
    scores(c) = std::log(model.priors(c)) - (0.5 * z.square() + model.stds.row(c).array().log() + half_log_2pi).sum();
  }
  return scores;
}

VectorXr posterior(const NbModel& model, const VectorXr& x) {
  const VectorXr s = log_posterior(model, x);
  const VectorXr e = (s.array() - s.maxCoeff()).exp();
  return e / e.sum();
}

int predict(const NbModel& model, const VectorXr& x) {
  const VectorXr s = log_posterior(model, x);
  int best = 0;
  for (int c = 1; c < s.size(); ++c)
    if (s(c) > s(best)) best = c;
  return best;
}

std::vector<int> predict_all(const NbModel& model, const MatrixXr& x) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out.push_back(predict(model, x.row(r).transpose()));
  return out;
}

}  // namespace pcasmote
