#include "pcasmote/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "pcasmote/rng.hpp"

namespace pcasmote {

namespace {

constexpr int kUciFeatures = 56;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::size_t Dataset::missing_count() const {
  return static_cast<std::size_t>(features.unaryExpr([](double v) { return is_missing(v) ? 1.0 : 0.0; }).sum());
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& idx) const {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(idx.size()), features.cols());
  out.labels.reserve(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) = features.row(idx[r]);
    out.labels.push_back(labels[static_cast<std::size_t>(idx[r])]);
  }
  out.class_names = class_names;
  out.feature_names = feature_names;
  out.provenance = provenance;
  return out;
}

void Dataset::validate() const {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw ArgumentError("dataset: " + std::to_string(features.rows()) + " feature rows but " +
                        std::to_string(labels.size()) + " labels");
  if (static_cast<std::size_t>(features.cols()) != feature_names.size())
    throw ArgumentError("dataset: " + std::to_string(features.cols()) + " feature columns but " +
                        std::to_string(feature_names.size()) + " feature names");
  for (int l : labels)
    if (l < 0 || l >= n_classes()) throw ArgumentError("dataset: label " + std::to_string(l) + " out of range");
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.labels != b.labels || a.class_names != b.class_names || a.feature_names != b.feature_names) return false;
  if (a.features.rows() != b.features.rows() || a.features.cols() != b.features.cols()) return false;
  // Bitwise comparison so that NaN markers compare equal to themselves.
  return a.features.size() == 0 ||
         std::memcmp(a.features.data(), b.features.data(), sizeof(double) * static_cast<std::size_t>(a.features.size())) == 0;
}

std::optional<ImputeStrategy> parse_impute_strategy(std::string_view s) {
  if (s == "mode") return ImputeStrategy::kMode;
  if (s == "mean") return ImputeStrategy::kMean;
  return std::nullopt;
}

std::string_view to_string(ImputeStrategy s) { return s == ImputeStrategy::kMode ? "mode" : "mean"; }

Dataset parse_uci_lung_cancer(std::string_view text, std::string provenance) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  const auto lines = lines_of(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = trim(lines[ln]);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != kUciFeatures + 1)
      throw ParseError("expected " + std::to_string(kUciFeatures + 1) + " fields, found " +
                           std::to_string(fields.size()),
                       ln + 1);
    const auto label = parse_number(fields[0]);
    if (!label) throw ParseError("class label '" + std::string(trim(fields[0])) + "' is not a number", ln + 1);
    if (*label != 1 && *label != 2 && *label != 3)
      throw DomainError("line " + std::to_string(ln + 1) + ": unknown class label '" + std::string(trim(fields[0])) + "'");
    std::vector<double> row;
    row.reserve(kUciFeatures);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto cell = trim(fields[f]);
      if (cell == "?") {
        row.push_back(kMissing);
        continue;
      }
      const auto v = parse_number(cell);
      if (!v) throw ParseError("field " + std::to_string(f + 1) + " '" + std::string(cell) + "' is not a number", ln + 1);
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
    labels.push_back(static_cast<int>(*label) - 1);
  }
  if (rows.empty()) throw ParseError("no samples in input");

  Dataset ds;
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), kUciFeatures);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < kUciFeatures; ++c) ds.features(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  ds.labels = std::move(labels);
  ds.class_names = {"TypeA", "TypeB", "TypeC"};
  for (int c = 1; c <= kUciFeatures; ++c) ds.feature_names.push_back("attr" + std::to_string(c));
  ds.provenance = std::move(provenance);
  const auto counts = class_counts(ds);
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] == 0) throw DomainError("class " + ds.class_names[c] + " has no samples");
  return ds;
}

Dataset load_uci_lung_cancer(const std::filesystem::path& path) {
  return parse_uci_lung_cancer(read_file(path), "uci:" + path.filename().string());
}

Dataset impute_missing(const Dataset& ds, ImputeStrategy strategy) {
  Dataset out = ds;
  for (Eigen::Index c = 0; c < out.features.cols(); ++c) {
    std::vector<double> present;
    for (Eigen::Index r = 0; r < out.features.rows(); ++r)
      if (!is_missing(out.features(r, c))) present.push_back(out.features(r, c));
    if (present.size() == static_cast<std::size_t>(out.features.rows())) continue;
    if (present.empty())
      throw ImputationError("feature '" + out.feature_names[static_cast<std::size_t>(c)] + "' has no observed values");

    double fill = 0;
    if (strategy == ImputeStrategy::kMean) {
      fill = std::accumulate(present.begin(), present.end(), 0.0) / static_cast<double>(present.size());
    } else {
      // std::map iterates ascending, so the first maximal count is the smallest value.
      std::map<double, int> freq;
      for (double v : present) ++freq[v];
      int best = 0;
      for (const auto& [value, count] : freq) {
        if (count > best) {
          best = count;
          fill = value;
        }
      }
    }
    for (Eigen::Index r = 0; r < out.features.rows(); ++r)
      if (is_missing(out.features(r, c))) out.features(r, c) = fill;
  }
  return out;
}

std::vector<int> class_counts(const Dataset& ds) {
  std::vector<int> counts(ds.class_names.size(), 0);
  for (int l : ds.labels) ++counts[static_cast<std::size_t>(l)];
  return counts;
}

std::vector<Eigen::Index> FoldAssignment::test_indices(int fold) const {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < fold_of_sample.size(); ++i)
    if (fold_of_sample[i] == fold) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

std::vector<Eigen::Index> FoldAssignment::train_indices(int fold) const {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < fold_of_sample.size(); ++i)
    if (fold_of_sample[i] != fold) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

FoldAssignment stratified_folds(const Dataset& ds, int k, std::uint64_t seed) {
  if (k < 2) throw ArgumentError("stratified_folds: k must be >= 2, got " + std::to_string(k));
  if (k > ds.n_samples())
    throw ArgumentError("stratified_folds: k=" + std::to_string(k) + " exceeds sample count " +
                        std::to_string(ds.n_samples()));
  Rng rng(seed);
  FoldAssignment fa;
  fa.k = k;
  fa.fold_of_sample.assign(ds.labels.size(), -1);
  std::size_t deal = 0;
  for (int c = 0; c < ds.n_classes(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ds.labels.size(); ++i)
      if (ds.labels[i] == c) members.push_back(i);
    for (std::size_t i = members.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform_index(i));
      std::swap(members[i - 1], members[j]);
    }
    for (std::size_t m : members) fa.fold_of_sample[m] = static_cast<int>(deal++ % static_cast<std::size_t>(k));
  }
  return fa;
}

std::string format_double(double v) {
  if (is_missing(v)) return "?";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string to_csv(const Dataset& ds) {
  std::string out;
  for (const auto& name : ds.feature_names) out += name + ",";
  out += "class\n";
  for (Eigen::Index r = 0; r < ds.n_samples(); ++r) {
    for (Eigen::Index c = 0; c < ds.n_features(); ++c) out += format_double(ds.features(r, c)) + ",";
    out += ds.class_names[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(r)])] + "\n";
  }
  return out;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) { write_file(path, to_csv(ds)); }

Dataset parse_csv(std::string_view text, const std::optional<std::vector<std::string>>& class_names,
                  std::string provenance) {
  const auto lines = lines_of(text);
  if (lines.empty() || trim(lines[0]).empty()) throw ParseError("empty CSV");
  const auto header = split(lines[0], ',');
  if (trim(header.back()) != "class") throw ParseError("last header field must be 'class'", 1);

  Dataset ds;
  for (std::size_t i = 0; i + 1 < header.size(); ++i) ds.feature_names.emplace_back(trim(header[i]));
  const std::size_t n_feat = ds.feature_names.size();

  std::vector<std::vector<double>> rows;
  std::vector<std::string> names;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const auto fields = split(lines[ln], ',');
    if (fields.size() != n_feat + 1)
      throw ParseError("expected " + std::to_string(n_feat + 1) + " fields, found " + std::to_string(fields.size()),
                       ln + 1);
    std::vector<double> row;
    for (std::size_t f = 0; f < n_feat; ++f) {
      if (trim(fields[f]) == "?") {
        row.push_back(kMissing);
        continue;
      }
      const auto v = parse_number(fields[f]);
      if (!v) throw ParseError("field " + std::to_string(f + 1) + " is not a number", ln + 1);
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
    names.emplace_back(trim(fields.back()));
  }
  if (rows.empty()) throw ParseError("no samples in CSV");

  if (class_names) {
    ds.class_names = *class_names;
  } else {
    ds.class_names = names;
    std::sort(ds.class_names.begin(), ds.class_names.end());
    ds.class_names.erase(std::unique(ds.class_names.begin(), ds.class_names.end()), ds.class_names.end());
  }
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n_feat));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < n_feat; ++c)
      ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    const auto it = std::find(ds.class_names.begin(), ds.class_names.end(), names[r]);
    if (it == ds.class_names.end()) throw DomainError("line " + std::to_string(r + 2) + ": unknown class '" + names[r] + "'");
    ds.labels.push_back(static_cast<int>(it - ds.class_names.begin()));
  }
  ds.provenance = std::move(provenance);
  return ds;
}

Dataset read_csv(const std::filesystem::path& path, const std::optional<std::vector<std::string>>& class_names) {
  return parse_csv(read_file(path), class_names, "csv:" + path.filename().string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto first = trim(lines_of(text).front());
  const auto header = split(first, ',');
  if (!header.empty() && trim(header.back()) == "class")
    return parse_csv(text, std::nullopt, "csv:" + path.filename().string());
  return parse_uci_lung_cancer(text, "uci:" + path.filename().string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pcasmote
