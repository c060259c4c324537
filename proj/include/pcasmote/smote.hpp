#pragma once

#include <cstdint>
#include <vector>

#include "pcasmote/dataset.hpp"
#include "pcasmote/rng.hpp"

namespace pcasmote {

struct SmoteConfig {
  int k = 5;
  int target_class = 0;
  int target_count = 0;
  std::uint64_t seed = 0;
};

/// Indices of the min(k, rows-1) rows nearest to row `idx` (Euclidean),
/// excluding `idx`, ordered by (distance, index).
std::vector<Eigen::Index> nearest_minority_neighbors(const MatrixXr& points, Eigen::Index idx, int k);

/// sample + u * (neighbor - sample) with u ~ U[0, 1) drawn from `rng`.
VectorXr synthesize(const VectorXr& sample, const VectorXr& neighbor, Rng& rng);

/// Same point for a caller-supplied u.
VectorXr interpolate(const VectorXr& sample, const VectorXr& neighbor, double u);

/// Appends target_count - current synthetic rows of cfg.target_class.
///
/// Parents are visited cyclically in dataset order; for each synthetic row one
/// neighbor (uniform over the clamped k-NN list) and then one u are drawn from
/// a single Rng seeded with cfg.seed.
Dataset oversample_class(const Dataset& ds, const SmoteConfig& cfg);

/// Runs oversample_class for each class in `order`, feeding each run's output
/// into the next. Run i uses seed Rng::derive_seed(seed, i). Returns every
/// intermediate dataset.
std::vector<Dataset> balance_sequence(const Dataset& ds, const std::vector<int>& order, int per_class_target, int k,
                                      std::uint64_t seed);

}  // namespace pcasmote
