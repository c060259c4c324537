#include <sstream>

#include <json.hpp>

#include "pcasmote/experiment.hpp"

namespace pcasmote {

namespace {

using nlohmann::ordered_json;

ordered_json rate_json(const Rate& r) { return {{"value", r.value}, {"defined", r.defined}}; }

ordered_json row_json(const MetricRow& r) {
  ordered_json j;
  j["accuracy"] = r.accuracy;
  j["fp_rate"] = r.fp_rate;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["misclassified"] = r.misclassified;
  j["n_samples"] = r.n_samples;
  j["n_features"] = r.n_features;
  j["undefined_rates"] = r.undefined_rates;
  ordered_json pcs = ordered_json::array();
  for (const auto& pc : r.per_class)
    pcs.push_back({{"class", pc.class_name},
                   {"fp_rate", rate_json(pc.fp_rate)},
                   {"precision", rate_json(pc.precision)},
                   {"recall", rate_json(pc.recall)}});
  j["per_class"] = std::move(pcs);
  return j;
}

ordered_json range_json(const RangeStat& r) { return {{"min", r.min}, {"median", r.median}, {"max", r.max}}; }

double metric_of(const MetricRow& r, const std::string& metric) {
  if (metric == "accuracy") return r.accuracy;
  if (metric == "fp_rate") return r.fp_rate;
  if (metric == "precision") return r.precision;
  if (metric == "recall") return r.recall;
  return r.misclassified;
}

const RangeStat& range_of(const Evaluation& e, const std::string& metric) {
  if (metric == "accuracy") return e.accuracy;
  if (metric == "fp_rate") return e.fp_rate;
  if (metric == "precision") return e.precision;
  if (metric == "recall") return e.recall;
  return e.misclassified;
}

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string report_json(const ExperimentReport& report) {
  ordered_json j;
  j["schema"] = "pcasmote-report";
  j["schema_version"] = ExperimentReport::kSchemaVersion;
  ordered_json cfg;
  for (const auto& [k, v] : report.config.to_map()) cfg[k] = v;
  j["config"] = std::move(cfg);
  j["environment"] = {{"toolkit_version", report.toolkit_version},
                      {"dataset_checksum_fnv1a64", report.dataset_checksum},
                      {"dataset_source", report.dataset_source},
                      {"missing_cells_before_imputation", report.missing_cells}};
  j["pca"] = {{"mode", to_string(report.config.pca_mode)},
              {"threshold", report.config.pca_threshold},
              {"retained", report.pca.retained},
              {"coverage", report.pca.coverage},
              {"retained_correlation_mode", report.pca.retained_correlation},
              {"retained_covariance_mode", report.pca.retained_covariance},
              {"eigenvalues", report.pca.eigenvalues}};
  ordered_json steps = ordered_json::array();
  for (const auto& s : report.steps) {
    ordered_json st;
    st["method"] = s.method_name;
    st["n_features"] = s.n_features;
    st["n_samples"] = s.n_samples;
    st["class_counts"] = s.class_counts;
    st["mean"] = row_json(s.evaluation.mean);
    st["range"] = {{"accuracy", range_json(s.evaluation.accuracy)},
                   {"fp_rate", range_json(s.evaluation.fp_rate)},
                   {"precision", range_json(s.evaluation.precision)},
                   {"recall", range_json(s.evaluation.recall)},
                   {"misclassified", range_json(s.evaluation.misclassified)}};
    ordered_json per_seed = ordered_json::array();
    for (std::size_t i = 0; i < s.evaluation.per_seed.size(); ++i) {
      ordered_json r = row_json(s.evaluation.per_seed[i]);
      r["seed"] = report.config.eval.seeds[i];
      const auto& cm = s.evaluation.confusion[i].counts;
      ordered_json rows = ordered_json::array();
      for (Eigen::Index a = 0; a < cm.rows(); ++a) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index p = 0; p < cm.cols(); ++p) row.push_back(cm(a, p));
        rows.push_back(std::move(row));
      }
      r["confusion"] = std::move(rows);
      per_seed.push_back(std::move(r));
    }
    st["per_seed"] = std::move(per_seed);
    steps.push_back(std::move(st));
  }
  j["steps"] = std::move(steps);
  return j.dump(2) + "\n";
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "schema_version,method,row,seed,n_features,n_samples,accuracy,fp_rate,precision,recall,misclassified,"
         "undefined_rates\n";
  auto emit = [&](const StepResult& s, const std::string& row, const std::string& seed, const MetricRow& m) {
    out << ExperimentReport::kSchemaVersion << ',' << s.method_name << ',' << row << ',' << seed << ','
        << s.n_features << ',' << s.n_samples << ',' << format_double(m.accuracy) << ',' << format_double(m.fp_rate)
        << ',' << format_double(m.precision) << ',' << format_double(m.recall) << ','
        << format_double(m.misclassified) << ',' << m.undefined_rates << '\n';
  };
  for (const auto& s : report.steps) {
    for (std::size_t i = 0; i < s.evaluation.per_seed.size(); ++i)
      emit(s, "seed", std::to_string(report.config.eval.seeds[i]), s.evaluation.per_seed[i]);
    emit(s, "mean", "", s.evaluation.mean);
  }
  return out.str();
}

std::string summary_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "method,features,samples,class_counts\n";
  for (const auto& s : report.steps) {
    out << s.method_name << ',' << s.n_features << ',' << s.n_samples << ',';
    for (std::size_t c = 0; c < s.class_counts.size(); ++c) out << (c ? ";" : "") << s.class_counts[c];
    out << '\n';
  }
  return out.str();
}

const std::vector<FigureData>& figures() {
  static const std::vector<FigureData> figs{
      {"plot_accuracy", "Overall accuracy", "accuracy"},
      {"plot_fp_rate", "False positive rate (weighted)", "fp_rate"},
      {"plot_precision", "Precision (weighted)", "precision"},
      {"plot_recall", "Recall (weighted)", "recall"},
      {"plot_misclassified", "Misclassified samples", "misclassified"},
  };
  return figs;
}

std::string figure_csv(const ExperimentReport& report, const FigureData& fig) {
  std::ostringstream out;
  out << "method," << fig.metric << ",min,median,max\n";
  for (const auto& s : report.steps) {
    const auto& r = range_of(s.evaluation, fig.metric);
    out << s.method_name << ',' << format_double(metric_of(s.evaluation.mean, fig.metric)) << ','
        << format_double(r.min) << ',' << format_double(r.median) << ',' << format_double(r.max) << '\n';
  }
  return out.str();
}

std::string figure_svg(const ExperimentReport& report, const FigureData& fig) {
  constexpr int kWidth = 520, kHeight = 320, kLeft = 50, kBottom = 40, kTop = 40;
  const int plot_h = kHeight - kTop - kBottom;
  double top = 0;
  for (const auto& s : report.steps) top = std::max(top, metric_of(s.evaluation.mean, fig.metric));
  if (fig.metric != "misclassified") top = std::max(top, 1.0);
  if (top <= 0) top = 1;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << svg_escape(fig.title) << "</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kWidth - 10 << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  const auto n = static_cast<int>(report.steps.size());
  const int slot = n ? (kWidth - kLeft - 10) / n : 0;
  for (int i = 0; i < n; ++i) {
    const auto& s = report.steps[static_cast<std::size_t>(i)];
    const double v = metric_of(s.evaluation.mean, fig.metric);
    const int h = static_cast<int>(plot_h * v / top);
    const int x = kLeft + i * slot + slot / 6;
    out << "<rect x=\"" << x << "\" y=\"" << kTop + plot_h - h << "\" width=\"" << slot * 2 / 3 << "\" height=\"" << h
        << "\" fill=\"#4878a8\"/>\n";
    out << "<text x=\"" << x + slot / 3 << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << svg_escape(s.method_name)
        << "</text>\n";
    out << "<text x=\"" << x + slot / 3 << "\" y=\"" << kTop + plot_h - h - 4
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << format_double(std::round(v * 1000) / 1000)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pcasmote
