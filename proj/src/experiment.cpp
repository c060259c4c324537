#include "pcasmote/experiment.hpp"

#include <algorithm>

#include "pcasmote/naive_bayes.hpp"
#include "pcasmote/pca.hpp"
#include "pcasmote/rng.hpp"
#include "pcasmote/smote.hpp"

namespace pcasmote {

namespace {

RangeStat range_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  RangeStat r;
  r.min = v.front();
  r.max = v.back();
  const auto n = v.size();
  r.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return r;
}

MetricRow mean_row(const std::vector<MetricRow>& rows) {
  MetricRow m = rows.front();
  const double n = static_cast<double>(rows.size());
  m.accuracy = m.fp_rate = m.precision = m.recall = m.misclassified = 0;
  m.undefined_rates = 0;
  for (auto& pc : m.per_class) pc.fp_rate = pc.precision = pc.recall = Rate{0, true};
  for (const auto& r : rows) {
    m.accuracy += r.accuracy / n;
    m.fp_rate += r.fp_rate / n;
    m.precision += r.precision / n;
    m.recall += r.recall / n;
    m.misclassified += r.misclassified / n;
    m.undefined_rates += r.undefined_rates;
    for (std::size_t c = 0; c < m.per_class.size(); ++c) {
      auto& dst = m.per_class[c];
      const auto& src = r.per_class[c];
      dst.fp_rate.value += src.fp_rate.value / n;
      dst.precision.value += src.precision.value / n;
      dst.recall.value += src.recall.value / n;
      dst.fp_rate.defined = dst.fp_rate.defined && src.fp_rate.defined;
      dst.precision.defined = dst.precision.defined && src.precision.defined;
      dst.recall.defined = dst.recall.defined && src.recall.defined;
    }
  }
  return m;
}

std::string step_name(std::size_t smote_run) { return "SMOTE" + std::to_string(smote_run + 1); }

}  // namespace

Evaluation evaluate_dataset(const Dataset& ds, const EvalConfig& eval, const std::string& method_name,
                            const FoldPrepare& prepare) {
  if (eval.seeds.empty()) throw ArgumentError("evaluate_dataset: seed list is empty");
  const auto counts = class_counts(ds);
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] < 2)
      throw ArgumentError("evaluate_dataset: class " + ds.class_names[c] + " has " + std::to_string(counts[c]) +
                          " sample(s); stratified evaluation needs at least 2");
  const int k = eval.protocol == Protocol::kKFold ? eval.k : static_cast<int>(ds.n_samples());

  Evaluation out;
  for (const std::uint64_t seed : eval.seeds) {
    const FoldAssignment folds = stratified_folds(ds, k, seed);
    std::vector<int> actual, predicted;
    Eigen::Index n_features = ds.n_features();
    for (int f = 0; f < k; ++f) {
      Dataset train = ds.subset(folds.train_indices(f));
      Dataset test = ds.subset(folds.test_indices(f));
      if (test.n_samples() == 0) continue;
      if (prepare) std::tie(train, test) = prepare(train, test, seed, f);
      const NbModel model = fit_nb(train);
      const auto pred = predict_all(model, test.features);
      actual.insert(actual.end(), test.labels.begin(), test.labels.end());
      predicted.insert(predicted.end(), pred.begin(), pred.end());
      n_features = test.n_features();
    }
    auto cm = confusion_matrix(actual, predicted, ds.n_classes(), ds.class_names);
    out.per_seed.push_back(metric_row(cm, method_name, static_cast<long>(n_features)));
    out.confusion.push_back(std::move(cm));
  }

  out.mean = mean_row(out.per_seed);
  auto collect = [&](auto field) {
    std::vector<double> v;
    for (const auto& r : out.per_seed) v.push_back(field(r));
    return range_of(std::move(v));
  };
  out.accuracy = collect([](const MetricRow& r) { return r.accuracy; });
  out.fp_rate = collect([](const MetricRow& r) { return r.fp_rate; });
  out.precision = collect([](const MetricRow& r) { return r.precision; });
  out.recall = collect([](const MetricRow& r) { return r.recall; });
  out.misclassified = collect([](const MetricRow& r) { return r.misclassified; });
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const Dataset& raw, std::string checksum) {
  if (cfg.pca_fit_within_fold && cfg.eval.resample_scope == ResampleScope::kWholeDataset && !cfg.smote_order.empty())
    throw ArgumentError(
        "pca.fit_within_fold=true needs eval.resample_scope=train-folds-only when SMOTE runs are configured");

  ExperimentReport report;
  report.config = cfg;
  report.toolkit_version = PCASMOTE_VERSION;
  report.dataset_checksum = std::move(checksum);
  report.dataset_source = raw.provenance;
  report.missing_cells = raw.missing_count();

  const Dataset imputed = impute_missing(raw, cfg.imputation);
  auto add_step = [&](const std::string& name, const Dataset& shown, const Dataset& evaluated, const FoldPrepare& prep) {
    StepResult step;
    step.method_name = name;
    step.n_features = static_cast<long>(shown.n_features());
    step.n_samples = static_cast<long>(shown.n_samples());
    step.class_counts = class_counts(shown);
    try {
      step.evaluation = evaluate_dataset(evaluated, cfg.eval, name, prep);
    } catch (const Error& e) {
      throw ArgumentError("step " + name + ": " + e.what());
    }
    report.steps.push_back(std::move(step));
  };

  add_step("Initial", imputed, imputed, {});

  const PcaModel pca = fit_pca(imputed, cfg.pca_threshold, cfg.pca_mode);
  report.pca.retained = pca.retained;
  report.pca.coverage = pca.cumulative_variance(pca.retained);
  report.pca.eigenvalues.assign(pca.eigenvalues.data(), pca.eigenvalues.data() + pca.eigenvalues.size());
  const PcaModel other = fit_pca(imputed, cfg.pca_threshold,
                                 cfg.pca_mode == PcaMode::kCorrelation ? PcaMode::kCovariance : PcaMode::kCorrelation);
  report.pca.retained_correlation = cfg.pca_mode == PcaMode::kCorrelation ? pca.retained : other.retained;
  report.pca.retained_covariance = cfg.pca_mode == PcaMode::kCovariance ? pca.retained : other.retained;

  const Dataset reduced = transform(pca, imputed);
  const std::vector<int> order = resolve_classes(cfg.smote_order, imputed.class_names);
  const auto runs = balance_sequence(reduced, order, cfg.smote_per_class_target, cfg.smote_k, cfg.smote_seed);

  // Per-fold pipeline used when PCA or SMOTE must see only the training fold.
  auto fold_pipeline = [&](std::size_t n_smote_runs) -> FoldPrepare {
    return [&cfg, order, n_smote_runs](const Dataset& train, const Dataset& test, std::uint64_t seed, int fold) {
      Dataset tr = train, te = test;
      if (cfg.pca_fit_within_fold) {
        const PcaModel m = fit_pca(tr, cfg.pca_threshold, cfg.pca_mode);
        tr = transform(m, tr);
        te = transform(m, te);
      }
      if (n_smote_runs > 0) {
        const std::vector<int> prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_smote_runs));
        const auto fold_seed = Rng::derive_seed(Rng::derive_seed(cfg.smote_seed, seed), static_cast<std::uint64_t>(fold));
        tr = balance_sequence(tr, prefix, cfg.smote_per_class_target, cfg.smote_k, fold_seed).back();
      }
      return std::make_pair(std::move(tr), std::move(te));
    };
  };

  if (cfg.pca_fit_within_fold) add_step("PCA", reduced, imputed, fold_pipeline(0));
  else add_step("PCA", reduced, reduced, {});

  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (cfg.eval.resample_scope == ResampleScope::kWholeDataset) {
      add_step(step_name(i), runs[i], runs[i], {});
    } else {
      add_step(step_name(i), runs[i], cfg.pca_fit_within_fold ? imputed : reduced, fold_pipeline(i + 1));
    }
  }
  return report;
}

ExperimentReport run_experiment_file(const ExperimentConfig& cfg) {
  const std::string bytes = read_file(cfg.dataset_path);
  const Dataset raw = load_dataset(cfg.dataset_path);
  return run_experiment(cfg, raw, fnv1a_hex(bytes));
}

}  // namespace pcasmote
