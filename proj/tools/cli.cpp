#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>

#include <CLI11.hpp>

#include "pcasmote/experiment.hpp"
#include "pcasmote/model_io.hpp"
#include "pcasmote/naive_bayes.hpp"
#include "pcasmote/pca.hpp"
#include "pcasmote/smote.hpp"

namespace pcasmote::cli {

namespace {

const char* code_tag(ExitCode c) {
  switch (c) {
    case ExitCode::kUsage: return "E2-usage";
    case ExitCode::kData: return "E3-data";
    case ExitCode::kNumerical: return "E4-numerical";
    default: return "E0";
  }
}

void report_error(std::ostream& err, ExitCode code, const std::string& msg) {
  err << "pcasmote: error[" << code_tag(code) << "]: " << msg << "\n";
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "pcasmote-out";
}

std::filesystem::path dataset_path(const CliInvocation& inv) {
  return inv.input ? *inv.input : std::filesystem::path(inv.config.dataset_path);
}

/// Loads the input and imputes it when it still carries missing markers.
Dataset load_complete(const CliInvocation& inv) {
  const Dataset ds = load_dataset(dataset_path(inv));
  return ds.missing_count() ? impute_missing(ds, inv.config.imputation) : ds;
}

std::string join_counts(const std::vector<int>& counts) {
  std::string s = "[";
  for (std::size_t i = 0; i < counts.size(); ++i) s += (i ? "," : "") + std::to_string(counts[i]);
  return s + "]";
}

int cmd_inspect(const CliInvocation& inv, std::ostream& out) {
  const auto path = dataset_path(inv);
  const Dataset ds = load_dataset(path);
  out << "source: " << ds.provenance << "\n"
      << "checksum (fnv1a64): " << fnv1a_hex(read_file(path)) << "\n"
      << "samples: " << ds.n_samples() << "\n"
      << "features: " << ds.n_features() << "\n"
      << "missing cells: " << ds.missing_count() << "\n"
      << "classes: ";
  for (std::size_t c = 0; c < ds.class_names.size(); ++c) out << (c ? "," : "") << ds.class_names[c];
  out << "\nclass counts: " << join_counts(class_counts(ds)) << "\n";
  return 0;
}

int cmd_reduce(const CliInvocation& inv, std::ostream& out) {
  const Dataset ds = load_complete(inv);
  const PcaModel model = fit_pca(ds, inv.config.pca_threshold, inv.config.pca_mode);
  save_model(model, inv.output_dir / "pca_model.txt");
  write_csv(transform(model, ds), inv.output_dir / "reduced.csv");
  out << "pca (" << to_string(model.mode) << ", threshold " << format_double(model.variance_threshold)
      << "): " << model.n_inputs() << " -> " << model.retained << " features, coverage "
      << format_double(model.cumulative_variance(model.retained)) << "\n";
  return 0;
}

int cmd_resample(const CliInvocation& inv, std::ostream& out) {
  const Dataset ds = load_complete(inv);
  const auto order = resolve_classes(inv.config.smote_order, ds.class_names);
  const auto runs =
      balance_sequence(ds, order, inv.config.smote_per_class_target, inv.config.smote_k, inv.config.smote_seed);
  const Dataset& result = runs.empty() ? ds : runs.back();
  write_csv(result, inv.output_dir / "resampled.csv");
  out << "class counts: " << join_counts(class_counts(ds));
  for (const auto& r : runs) out << " -> " << join_counts(class_counts(r));
  out << "\n";
  return 0;
}

int cmd_train(const CliInvocation& inv, std::ostream& out) {
  const Dataset ds = load_complete(inv);
  const NbModel model = fit_nb(ds);
  save_model(model, inv.output_dir / "nb_model.txt");
  out << "naive bayes: " << model.n_classes() << " classes, " << model.n_features() << " features\n";
  return 0;
}

int cmd_evaluate(const CliInvocation& inv, std::ostream& out) {
  const Dataset ds = load_complete(inv);
  const Evaluation ev = evaluate_dataset(ds, inv.config.eval, "dataset");
  std::string csv = "seed,accuracy,fp_rate,precision,recall,misclassified\n";
  for (std::size_t i = 0; i < ev.per_seed.size(); ++i) {
    const auto& r = ev.per_seed[i];
    csv += std::to_string(inv.config.eval.seeds[i]) + "," + format_double(r.accuracy) + "," + format_double(r.fp_rate) +
           "," + format_double(r.precision) + "," + format_double(r.recall) + "," + format_double(r.misclassified) + "\n";
  }
  const auto& m = ev.mean;
  csv += "mean," + format_double(m.accuracy) + "," + format_double(m.fp_rate) + "," + format_double(m.precision) + "," +
         format_double(m.recall) + "," + format_double(m.misclassified) + "\n";
  write_file(inv.output_dir / "evaluation.csv", csv);
  out << "accuracy " << format_double(m.accuracy) << ", fp_rate " << format_double(m.fp_rate) << ", precision "
      << format_double(m.precision) << ", recall " << format_double(m.recall) << ", misclassified "
      << format_double(m.misclassified) << " (mean over " << ev.per_seed.size() << " seeds)\n";
  return 0;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_experiment(const CliInvocation& inv, std::ostream& out) {
  ExperimentConfig cfg = inv.config;
  if (inv.input) cfg.dataset_path = inv.input->string();
  const ExperimentReport report = run_experiment_file(cfg);
  const auto& dir = inv.output_dir;
  write_file(dir / "report.json", report_json(report));
  write_file(dir / "report.csv", report_csv(report));
  write_file(dir / "summary.csv", summary_csv(report));
  for (const auto& fig : figures()) {
    write_file(dir / (fig.file_stem + ".csv"), figure_csv(report, fig));
    if (cfg.emit_svg || inv.svg) write_file(dir / (fig.file_stem + ".svg"), figure_svg(report, fig));
  }
  write_file(dir / "run_metadata.json", "{\n  \"timestamp\": \"" + utc_timestamp() + "\",\n  \"toolkit_version\": \"" +
                                            report.toolkit_version + "\"\n}\n");

  out << "pca: " << report.pca.retained << " components (" << to_string(cfg.pca_mode) << "), covariance mode "
      << report.pca.retained_covariance << ", correlation mode " << report.pca.retained_correlation << "\n";
  out << "method    features samples accuracy fp_rate precision recall misclassified\n";
  for (const auto& s : report.steps) {
    const auto& m = s.evaluation.mean;
    char line[160];
    std::snprintf(line, sizeof(line), "%-9s %8ld %7ld %8.3f %7.3f %9.3f %6.3f %13.2f\n", s.method_name.c_str(),
                  s.n_features, s.n_samples, m.accuracy, m.fp_rate, m.precision, m.recall, m.misclassified);
    out << line;
  }
  if (inv.verbosity > 0) out << "artifacts written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

ParseOutcome parse_invocation(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PCA + SMOTE + naive Bayes experiment toolkit", "pcasmote"};
  app.require_subcommand(1);

  CliInvocation inv;
  std::string config_path, input, output_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "key=value or JSON config file");
    sub->add_option("-i,--input", input, "dataset file (UCI .data or canonical CSV)");
    sub->add_option("--set", inv.overrides, "override a config key, e.g. smote.seed=7")->take_all();
    sub->add_option("-o,--output", output_dir, std::string("output directory (default $") + kOutputDirEnv + ")");
    sub->add_flag("-v,--verbose", inv.verbosity, "more output");
  };
  const std::vector<std::pair<const char*, const char*>> subs{
      {"inspect", "print dataset shape, missing cells and class counts"},
      {"reduce", "fit PCA, write the model and the projected dataset"},
      {"resample", "run the configured SMOTE sequence and write the result"},
      {"train", "fit naive Bayes and write the model"},
      {"evaluate", "cross-validate naive Bayes on a dataset"},
      {"experiment", "run the full five-step comparison and write reports"},
  };
  for (const auto& [name, desc] : subs) {
    auto* sub = app.add_subcommand(name, desc);
    add_common(sub);
    if (std::string(name) == "experiment") sub->add_flag("--svg", inv.svg, "also write SVG bar charts");
  }

  if (argv.size() <= 1) {
    err << app.help();
    return {std::nullopt, static_cast<int>(ExitCode::kUsage)};
  }
  std::vector<std::string> args(argv.rbegin(), argv.rend() - 1);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, 0};
  } catch (const CLI::ParseError& e) {
    report_error(err, ExitCode::kUsage, e.what());
    err << app.help();
    return {std::nullopt, static_cast<int>(ExitCode::kUsage)};
  }

  for (const auto* sub : app.get_subcommands()) inv.subcommand = sub->get_name();
  if (!config_path.empty()) inv.config_path = config_path;
  if (!input.empty()) inv.input = input;
  inv.output_dir = output_dir.empty() ? default_output_dir() : std::filesystem::path(output_dir);

  if (inv.subcommand == "experiment" && !inv.config_path) {
    report_error(err, ExitCode::kUsage, "experiment requires --config");
    return {std::nullopt, static_cast<int>(ExitCode::kUsage)};
  }
  if (inv.subcommand != "experiment" && !inv.config_path && !inv.input) {
    report_error(err, ExitCode::kUsage, inv.subcommand + " requires --config or --input");
    return {std::nullopt, static_cast<int>(ExitCode::kUsage)};
  }

  try {
    if (inv.config_path) inv.config = load_config(*inv.config_path);
    for (const auto& o : inv.overrides) apply_override(inv.config, o);
  } catch (const Error& e) {
    report_error(err, e.code(), e.what());
    return {std::nullopt, static_cast<int>(e.code())};
  }
  return {std::move(inv), 0};
}

int run_invocation(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  try {
    if (inv.subcommand == "inspect") return cmd_inspect(inv, out);
    if (inv.subcommand == "reduce") return cmd_reduce(inv, out);
    if (inv.subcommand == "resample") return cmd_resample(inv, out);
    if (inv.subcommand == "train") return cmd_train(inv, out);
    if (inv.subcommand == "evaluate") return cmd_evaluate(inv, out);
    if (inv.subcommand == "experiment") return cmd_experiment(inv, out);
    report_error(err, ExitCode::kUsage, "unknown subcommand '" + inv.subcommand + "'");
    return static_cast<int>(ExitCode::kUsage);
  } catch (const Error& e) {
    report_error(err, e.code(), e.what());
    return static_cast<int>(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    report_error(err, ExitCode::kData, e.what());
    return static_cast<int>(ExitCode::kData);
  }
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse_invocation(argv, out, err);
  if (!parsed.invocation) return parsed.exit_status;
  return run_invocation(*parsed.invocation, out, err);
}

}  // namespace pcasmote::cli
