#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcasmote/linalg.hpp"

namespace pcasmote {

/// Missing cells are stored as a quiet NaN until imputation removes them.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

struct Dataset {
  MatrixXr features;  // n_samples x n_features
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;
  std::string provenance;

  Eigen::Index n_samples() const { return features.rows(); }
  Eigen::Index n_features() const { return features.cols(); }
  int n_classes() const { return static_cast<int>(class_names.size()); }
  std::size_t missing_count() const;

  /// Rows `idx` (in the given order), labels and names carried through.
  Dataset subset(const std::vector<Eigen::Index>& idx) const;

  /// Throws ArgumentError if shapes, labels or names are inconsistent.
  void validate() const;
};

bool operator==(const Dataset& a, const Dataset& b);

enum class ImputeStrategy { kMode, kMean };

std::optional<ImputeStrategy> parse_impute_strategy(std::string_view s);
std::string_view to_string(ImputeStrategy s);

/// Parses the UCI lung-cancer `.data` text: label first (1/2/3), then 56
/// integer codes or "?". Blank lines are ignored.
Dataset parse_uci_lung_cancer(std::string_view text, std::string provenance = "uci:lung-cancer");
Dataset load_uci_lung_cancer(const std::filesystem::path& path);

Dataset impute_missing(const Dataset& ds, ImputeStrategy strategy = ImputeStrategy::kMode);

std::vector<int> class_counts(const Dataset& ds);

struct FoldAssignment {
  std::vector<int> fold_of_sample;
  int k = 0;

  std::vector<Eigen::Index> test_indices(int fold) const;
  std::vector<Eigen::Index> train_indices(int fold) const;
};

/// Each class's members are shuffled with a seeded Rng and then dealt
/// round-robin onto folds, continuing the deal position from one class to the
/// next so total fold sizes also differ by at most one.
FoldAssignment stratified_folds(const Dataset& ds, int k, std::uint64_t seed);

/// Canonical CSV: header = feature names then "class"; class written by name;
/// values in shortest round-trip form; missing cells as "?".
std::string to_csv(const Dataset& ds);
void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// Reads the canonical CSV. Class order is `class_names` when given, otherwise
/// the sorted set of names in the file.
Dataset parse_csv(std::string_view text, const std::optional<std::vector<std::string>>& class_names = std::nullopt,
                  std::string provenance = "csv");
Dataset read_csv(const std::filesystem::path& path,
                 const std::optional<std::vector<std::string>>& class_names = std::nullopt);

/// Loads either format: canonical CSV when the first line contains "class"
/// as its last header field, UCI `.data` otherwise.
Dataset load_dataset(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// 64-bit FNV-1a, hex encoded. Used as the dataset fingerprint in reports.
std::string fnv1a_hex(std::string_view bytes);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace pcasmote
