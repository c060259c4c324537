#include "pcasmote/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <json.hpp>

namespace pcasmote {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  s = trim(s);
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(',', start);
    if (pos == std::string_view::npos) pos = s.size();
    const auto tok = trim(s.substr(start, pos - start));
    if (!tok.empty()) out.emplace_back(tok);
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ArgumentError("config key '" + std::string(key) + "': invalid value '" + std::string(value) + "' (" +
                      std::string(why) + ")");
}

template <typename T>
T parse_int(std::string_view key, std::string_view value) {
  value = trim(value);
  T v{};
  const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size() || value.empty()) bad_value(key, value, "expected an integer");
  return v;
}

double parse_real(std::string_view key, std::string_view value) {
  value = trim(value);
  double v = 0;
  const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size() || value.empty()) bad_value(key, value, "expected a number");
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "expected true or false");
}

void flatten_json(const nlohmann::json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten_json(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) text += ",";
      text += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
    }
  } else {
    text = j.dump();
  }
  out.emplace_back(prefix, std::move(text));
}

}  // namespace

std::string_view to_string(Protocol p) { return p == Protocol::kKFold ? "kfold" : "loo"; }
std::string_view to_string(ResampleScope s) {
  return s == ResampleScope::kWholeDataset ? "whole-dataset" : "train-folds-only";
}

ExperimentConfig::ExperimentConfig() {
  for (std::uint64_t s = 1; s <= 20; ++s) eval.seeds.push_back(s);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "dataset.path",       "dataset.imputation", "pca.threshold",      "pca.mode",
      "pca.fit_within_fold", "smote.k",           "smote.order",        "smote.per_class_target",
      "smote.seed",         "eval.protocol",      "eval.k",             "eval.seeds",
      "eval.resample_scope", "output.svg"};
  return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "dataset.path") {
    if (value.empty()) bad_value(key, value, "empty path");
    dataset_path = std::string(value);
  } else if (key == "dataset.imputation") {
    const auto s = parse_impute_strategy(value);
    if (!s) bad_value(key, value, "expected mode or mean");
    imputation = *s;
  } else if (key == "pca.threshold") {
    const double t = parse_real(key, value);
    if (!(t > 0.0 && t <= 1.0)) bad_value(key, value, "threshold must lie in (0, 1]");
    pca_threshold = t;
  } else if (key == "pca.mode") {
    const auto m = parse_pca_mode(value);
    if (!m) bad_value(key, value, "expected correlation or covariance");
    pca_mode = *m;
  } else if (key == "pca.fit_within_fold") {
    pca_fit_within_fold = parse_bool(key, value);
  } else if (key == "smote.k") {
    smote_k = parse_int<int>(key, value);
    if (smote_k < 1) bad_value(key, value, "k must be >= 1");
  } else if (key == "smote.order") {
    smote_order = split_list(value);
  } else if (key == "smote.per_class_target") {
    smote_per_class_target = parse_int<int>(key, value);
    if (smote_per_class_target < 1) bad_value(key, value, "target must be >= 1");
  } else if (key == "smote.seed") {
    smote_seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "eval.protocol") {
    if (value == "kfold" || value == "k-fold") eval.protocol = Protocol::kKFold;
    else if (value == "loo" || value == "leave-one-out") eval.protocol = Protocol::kLeaveOneOut;
    else bad_value(key, value, "expected kfold or loo");
  } else if (key == "eval.k") {
    eval.k = parse_int<int>(key, value);
    if (eval.k < 2) bad_value(key, value, "k must be >= 2");
  } else if (key == "eval.seeds") {
    try {
      eval.seeds = parse_seed_list(value);
    } catch (const ArgumentError& e) {
      bad_value(key, value, e.what());
    }
    if (eval.seeds.empty()) bad_value(key, value, "seed list must be nonempty");
  } else if (key == "eval.resample_scope") {
    if (value == "whole-dataset") eval.resample_scope = ResampleScope::kWholeDataset;
    else if (value == "train-folds-only") eval.resample_scope = ResampleScope::kTrainFoldsOnly;
    else bad_value(key, value, "expected whole-dataset or train-folds-only");
  } else if (key == "output.svg") {
    emit_svg = parse_bool(key, value);
  } else {
    throw ArgumentError("unknown config key '" + std::string(key) + "'");
  }
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
  std::string order, seeds;
  for (const auto& o : smote_order) order += (order.empty() ? "" : ",") + o;
  for (auto s : eval.seeds) seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
  return {
      {"dataset.path", dataset_path},
      {"dataset.imputation", std::string(to_string(imputation))},
      {"pca.threshold", format_double(pca_threshold)},
      {"pca.mode", std::string(to_string(pca_mode))},
      {"pca.fit_within_fold", pca_fit_within_fold ? "true" : "false"},
      {"smote.k", std::to_string(smote_k)},
      {"smote.order", order},
      {"smote.per_class_target", std::to_string(smote_per_class_target)},
      {"smote.seed", std::to_string(smote_seed)},
      {"eval.protocol", std::string(to_string(eval.protocol))},
      {"eval.k", std::to_string(eval.k)},
      {"eval.seeds", seeds},
      {"eval.resample_scope", std::string(to_string(eval.resample_scope))},
      {"output.svg", emit_svg ? "true" : "false"},
  };
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("config JSON: ") + e.what());
    }
    std::vector<std::pair<std::string, std::string>> flat;
    flatten_json(j, "", flat);
    for (const auto& [k, v] : flat) cfg.set(k, v);
    return cfg;
  }
  std::size_t ln = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++ln;
    auto line = text.substr(start, end - start);
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("config: expected key = value", ln);
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ArgumentError("override '" + std::string(assignment) + "' is not of the form key=value");
  cfg.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::vector<int> resolve_classes(const std::vector<std::string>& tokens, const std::vector<std::string>& class_names) {
  std::vector<int> out;
  for (const auto& t : tokens) {
    int found = -1;
    for (std::size_t c = 0; c < class_names.size(); ++c)
      if (class_names[c] == t || class_names[c] == "Type" + t) found = static_cast<int>(c);
    if (found < 0 && !t.empty() && std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const int idx = std::stoi(t);
      if (idx < static_cast<int>(class_names.size())) found = idx;
    }
    if (found < 0) throw ArgumentError("smote.order: unknown class '" + t + "'");
    out.push_back(found);
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto& tok : split_list(text)) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_int<std::uint64_t>("eval.seeds", tok));
      continue;
    }
    const auto lo = parse_int<std::uint64_t>("eval.seeds", std::string_view(tok).substr(0, dash));
    const auto hi = parse_int<std::uint64_t>("eval.seeds", std::string_view(tok).substr(dash + 1));
    if (hi < lo) throw ArgumentError("empty seed range '" + tok + "'");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  }
  return out;
}

}  // namespace pcasmote
