#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "drad/checkpoint.hpp"
#include "drad/dataset.hpp"
#include "drad/kv_file.hpp"
#include "drad/train.hpp"

namespace drad {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitConfig = 3,
  kExitData = 4,
  kExitNumeric = 5,
};

/// Everything a command needs, resolved from a key/value config file with
/// command-line overrides applied on top.
struct RunConfig {
  DatasetManifest manifest;
  TrainConfig train;
  std::size_t layers = 3;
  std::size_t hidden = 128;
  Gating gating = Gating::Standard;
  InputDomain input_domain = InputDomain::Time;
  std::optional<std::pair<int, int>> train_snr_range;
  std::vector<std::size_t> ablate_layers{1, 2, 3};
  double sensitivity_threshold = 0.9;

  // dataset = imported: descriptor plus one raw dump per split
  std::filesystem::path import_descriptor;
  std::filesystem::path import_train;
  std::filesystem::path import_val;
  std::filesystem::path import_test;

  std::vector<std::size_t> hidden_sizes(std::size_t n_layers) const {
    return std::vector<std::size_t>(n_layers, hidden);
  }

  /// Unknown keys and malformed values throw ConfigError naming the key.
  /// Relative import paths resolve against `base_dir`.
  static RunConfig from_kv(const KeyValues& kv, const std::filesystem::path& base_dir = {});
  KeyValues to_kv() const;
};

/// Runs one command. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drad
