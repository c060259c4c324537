#pragma once

// Versioned plain-text model format shared by PcaModel and NbModel.
//
//   pcasmote-model 1
//   kind <pca|naive_bayes>
//   <key> <value>                  scalar fields, one per line
//   names <key> <count>            followed by <count> lines, one name each
//   vector <key> <len>             followed by one line of <len> values
//   matrix <key> <rows> <cols>     followed by <rows> lines of <cols> values
//   end
//
// Values use the shortest decimal form that round-trips to the same double.

#include <filesystem>
#include <string>
#include <string_view>

#include "pcasmote/naive_bayes.hpp"
#include "pcasmote/pca.hpp"

namespace pcasmote {

inline constexpr int kModelFormatVersion = 1;

std::string serialize(const PcaModel& model);
std::string serialize(const NbModel& model);

PcaModel parse_pca_model(std::string_view text);
NbModel parse_nb_model(std::string_view text);

void save_model(const PcaModel& model, const std::filesystem::path& path);
void save_model(const NbModel& model, const std::filesystem::path& path);

}  // namespace pcasmote
