#include "pcasmote/smote.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pcasmote {

std::vector<Eigen::Index> nearest_minority_neighbors(const MatrixXr& points, Eigen::Index idx, int k) {
  if (points.rows() < 2) throw ArgumentError("nearest_minority_neighbors: need at least 2 points");
  if (idx < 0 || idx >= points.rows()) throw ArgumentError("nearest_minority_neighbors: index out of range");
  if (k < 1) throw ArgumentError("nearest_minority_neighbors: k must be >= 1");

  std::vector<std::pair<double, Eigen::Index>> dist;
  dist.reserve(static_cast<std::size_t>(points.rows() - 1));
  for (Eigen::Index j = 0; j < points.rows(); ++j) {
    if (j == idx) continue;
    dist.emplace_back((points.row(j) - points.row(idx)).squaredNorm(), j);
  }
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(k), dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(keep), dist.end());
  std::vector<Eigen::Index> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(dist[i].second);
  return out;
}

VectorXr interpolate(const VectorXr& sample, const VectorXr& neighbor, double u) {
  if (sample.size() != neighbor.size())
    throw ArgumentError("synthesize: sample has " + std::to_string(sample.size()) + " features, neighbor has " +
                        std::to_string(neighbor.size()));
  return sample + u * (neighbor - sample);
}

VectorXr synthesize(const VectorXr& sample, const VectorXr& neighbor, Rng& rng) {
  if (sample.size() != neighbor.size())
    throw ArgumentError("synthesize: sample has " + std::to_string(sample.size()) + " features, neighbor has " +
                        std::to_string(neighbor.size()));
  return interpolate(sample, neighbor, rng.uniform01());
}

Dataset oversample_class(const Dataset& ds, const SmoteConfig& cfg) {
  if (cfg.k < 1) throw ArgumentError("smote: k must be >= 1, got " + std::to_string(cfg.k));
  if (cfg.target_class < 0 || cfg.target_class >= ds.n_classes())
    throw ArgumentError("smote: target class " + std::to_string(cfg.target_class) + " out of range");

  std::vector<Eigen::Index> members;
  for (std::size_t i = 0; i < ds.labels.size(); ++i)
    if (ds.labels[i] == cfg.target_class) members.push_back(static_cast<Eigen::Index>(i));
  const auto current = static_cast<int>(members.size());
  const std::string& name = ds.class_names[static_cast<std::size_t>(cfg.target_class)];
  if (cfg.target_count < current)
    throw ArgumentError("smote: target count " + std::to_string(cfg.target_count) + " below current count " +
                        std::to_string(current) + " of class " + name);
  if (cfg.target_count == current) return ds;
  if (current < 2)
    throw ResampleError("smote: class " + name + " has " + std::to_string(current) + " sample(s), need at least 2");

  MatrixXr minority(current, ds.n_features());
  for (int i = 0; i < current; ++i) minority.row(i) = ds.features.row(members[static_cast<std::size_t>(i)]);

  const int k = std::min(cfg.k, current - 1);
  std::vector<std::vector<Eigen::Index>> neighbors(static_cast<std::size_t>(current));
  for (int i = 0; i < current; ++i) neighbors[static_cast<std::size_t>(i)] = nearest_minority_neighbors(minority, i, k);

  const int n_new = cfg.target_count - current;
  Dataset out = ds;
  out.features.conservativeResize(ds.n_samples() + n_new, Eigen::NoChange);
  out.labels.reserve(out.labels.size() + static_cast<std::size_t>(n_new));

  Rng rng(cfg.seed);
  for (int s = 0; s < n_new; ++s) {
    const int parent = s % current;
    const auto& nn = neighbors[static_cast<std::size_t>(parent)];
    const Eigen::Index pick = nn[static_cast<std::size_t>(rng.uniform_index(nn.size()))];
    out.features.row(ds.n_samples() + s) =
        synthesize(minority.row(parent).transpose(), minority.row(pick).transpose(), rng).transpose();
    out.labels.push_back(cfg.target_class);
  }
  out.provenance = ds.provenance + "|smote:" + name;
  return out;
}

std::vector<Dataset> balance_sequence(const Dataset& ds, const std::vector<int>& order, int per_class_target, int k,
                                      std::uint64_t seed) {
  if (std::set<int>(order.begin(), order.end()).size() != order.size())
    throw ArgumentError("balance_sequence: order lists a class more than once");
  const auto counts = class_counts(ds);
  for (int c : order) {
    if (c < 0 || c >= ds.n_classes()) throw ArgumentError("balance_sequence: class " + std::to_string(c) + " out of range");
  }
  if (!order.empty() && per_class_target < *std::max_element(counts.begin(), counts.end()))
    throw ArgumentError("balance_sequence: per-class target " + std::to_string(per_class_target) +
                        " is below the largest class count");

  std::vector<Dataset> runs;
  runs.reserve(order.size());
  const Dataset* prev = &ds;
  for (std::size_t i = 0; i < order.size(); ++i) {
    SmoteConfig cfg{.k = k, .target_class = order[i], .target_count = per_class_target,
                    .seed = Rng::derive_seed(seed, i)};
    runs.push_back(oversample_class(*prev, cfg));
    prev = &runs.back();
  }
  return runs;
}

}  // namespace pcasmote
