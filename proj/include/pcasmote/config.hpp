#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pcasmote/dataset.hpp"
#include "pcasmote/pca.hpp"

namespace pcasmote {

enum class Protocol { kKFold, kLeaveOneOut };
enum class ResampleScope { kWholeDataset, kTrainFoldsOnly };

std::string_view to_string(Protocol p);
std::string_view to_string(ResampleScope s);

struct EvalConfig {
  Protocol protocol = Protocol::kKFold;
  int k = 10;
  std::vector<std::uint64_t> seeds;  // defaults to 1..20
  ResampleScope resample_scope = ResampleScope::kWholeDataset;
};

struct ExperimentConfig {
  std::string dataset_path = "data/lung-cancer.data";
  ImputeStrategy imputation = ImputeStrategy::kMode;

  double pca_threshold = 0.9;
  PcaMode pca_mode = PcaMode::kCorrelation;
  bool pca_fit_within_fold = false;

  int smote_k = 5;
  std::vector<std::string> smote_order{"TypeA", "TypeC", "TypeB"};
  int smote_per_class_target = 18;
  std::uint64_t smote_seed = 42;

  EvalConfig eval;
  bool emit_svg = false;

  ExperimentConfig();

  /// Sets one dotted key from its text value. Unknown keys and out-of-range
  /// values throw ArgumentError naming the key.
  void set(std::string_view key, std::string_view value);

  /// Ordered key -> value text, the inverse of set().
  std::map<std::string, std::string> to_map() const;
};

/// Every key accepted by ExperimentConfig::set, in documentation order.
const std::vector<std::string>& config_keys();

/// Flat `key = value` lines; `#` starts a comment. Text whose first
/// non-blank character is `{` is read as JSON with nested objects mapping to
/// dotted keys.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override.
void apply_override(ExperimentConfig& cfg, std::string_view assignment);

/// Resolves class tokens ("TypeA", "A" or a 0-based index) against a dataset's class names.
std::vector<int> resolve_classes(const std::vector<std::string>& tokens, const std::vector<std::string>& class_names);

/// "1-20" or "3,7,11" (ranges and lists may be mixed).
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

}  // namespace pcasmote
