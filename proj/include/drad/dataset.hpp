#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "drad/kv_file.hpp"
#include "drad/signal.hpp"

namespace drad {

inline constexpr std::uint16_t kFormatVersion = 1;

enum class Split : std::uint8_t { Train = 0, Val = 1, Test = 2 };

const char* split_name(Split s) noexcept;

/// Which generator family the class names resolve against.
enum class DatasetFamily { DeepRadar2022, EightClass, Imported };

DatasetFamily family_from_name(const std::string& dataset_name);

struct DatasetManifest {
  std::string dataset_name = "deepradar2022";
  std::vector<std::string> class_names;
  std::vector<int> snr_grid_db;
  std::uint64_t train_per_cell = 0;
  std::uint64_t val_per_cell = 0;
  std::uint64_t test_per_cell = 0;
  std::uint64_t master_seed = 0;
  double sample_rate_hz = kRadarSampleRateHz;
  std::uint32_t signal_length = kSignalLength;
  std::uint16_t format_version = kFormatVersion;

  std::size_t cells() const noexcept { return class_names.size() * snr_grid_db.size(); }
  std::uint64_t per_cell(Split s) const noexcept;
  std::uint64_t split_count(Split s) const noexcept { return cells() * per_cell(s); }
  std::uint64_t total_count() const noexcept {
    return split_count(Split::Train) + split_count(Split::Val) + split_count(Split::Test);
  }

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;

  KeyValues to_kv() const;
  static DatasetManifest from_kv(const KeyValues& kv);
};

/// 23 classes x (-12:2:20 dB) x (1200, 400, 400).
DatasetManifest deepradar2022_manifest(std::uint64_t master_seed = 2022);
/// 8 classes x (-20:2:20 dB) x (1200, 400, 400).
DatasetManifest eightclass_manifest(std::uint64_t master_seed = 2022);

/// One stored example: interleaved I/Q as f32, class index and SNR label.
struct LabeledExample {
  std::vector<float> iq;  ///< 2 * signal_length values: I0, Q0, I1, Q1, ...
  std::uint16_t class_index = 0;
  std::int16_t snr_db = 0;

  std::size_t length() const noexcept { return iq.size() / 2; }
  std::vector<cplx> samples() const;
  static std::vector<float> interleave(std::span<const cplx> samples);

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct SplitData {
  std::uint16_t n_classes = 0;
  std::uint32_t signal_length = kSignalLength;
  std::vector<LabeledExample> examples;
};

/// Seed of example `index` in cell (class_index, snr_db) of `split`.
std::uint64_t example_seed(std::uint64_t master_seed, std::size_t class_index, int snr_db,
                           Split split, std::uint64_t index) noexcept;

/// Noiseless unit-power signal for class `class_index` of the manifest.
std::vector<cplx> clean_signal(const DatasetManifest& manifest, std::size_t class_index,
                               CounterRng& rng);

/// Generates one noisy example; a pure function of its arguments.
LabeledExample generate_example(const DatasetManifest& manifest, std::size_t class_index,
                                int snr_db, Split split, std::uint64_t index);

/// Record `position` of a split file is cell-major: class, then SNR, then
/// the example index inside the cell.
struct CellPosition {
  std::size_t class_index;
  std::size_t snr_index;
  std::uint64_t index;
};
CellPosition locate_record(const DatasetManifest& manifest, Split split, std::uint64_t position);

struct BuildOptions {
  std::size_t block_records = 2048;  ///< records generated in parallel per write
};

/// Writes train.drad, val.drad, test.drad and manifest.txt into out_dir.
void build_dataset(const DatasetManifest& manifest, const std::filesystem::path& out_dir,
                   const BuildOptions& options = {});

/// Generates one split into memory (smoke-scale use).
SplitData generate_split(const DatasetManifest& manifest, Split split);

std::filesystem::path split_path(const std::filesystem::path& dir, Split split);

/// Replaces every signal with its unit-power autocorrelation.
void to_autocorrelation_domain(SplitData& split);

/// Keeps examples whose SNR lies in [snr_min, snr_max].
void filter_snr(SplitData& split, int snr_min, int snr_max);

}  // namespace drad
