#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcasmote/config.hpp"

namespace pcasmote::cli {

inline constexpr const char* kOutputDirEnv = "PCASMOTE_OUTPUT_DIR";

struct CliInvocation {
  std::string subcommand;  // inspect | reduce | resample | train | evaluate | experiment
  std::optional<std::filesystem::path> config_path;
  std::optional<std::filesystem::path> input;
  std::vector<std::string> overrides;
  std::filesystem::path output_dir;
  int verbosity = 0;
  bool svg = false;

  ExperimentConfig config;  // file (or defaults) with overrides applied
};

/// Either a validated invocation or the exit status to return right away
/// (usage errors, --help).
struct ParseOutcome {
  std::optional<CliInvocation> invocation;
  int exit_status = 0;
};

ParseOutcome parse_invocation(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

int run_invocation(const CliInvocation& inv, std::ostream& out, std::ostream& err);

/// parse_invocation + run_invocation with exceptions mapped to exit statuses.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace pcasmote::cli
