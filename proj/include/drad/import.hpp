#pragma once

#include <cstdint>
#include <filesystem>

#include "drad/kv_file.hpp"

namespace drad {

/// How an external raw-f32 IQ dump is laid out. Loaded from a key/value file:
///   signal_length   samples per record (must equal expected_length)
///   layout          interleaved (I0 Q0 I1 Q1 ...) or planar (I block, Q block)
///   n_classes       label range
///   labels_path     text file, one class index per record
///   snrs_path       optional text file, one integer SNR per record
///   default_snr_db  used when snrs_path is absent (default 0)
///   expected_length model input length (default 1024)
struct ImportLayout {
  std::uint32_t signal_length = 1024;
  bool interleaved = true;
  std::uint16_t n_classes = 0;
  std::filesystem::path labels_path;
  std::filesystem::path snrs_path;
  int default_snr_db = 0;
  std::uint32_t expected_length = 1024;

  /// Relative paths resolve against `base_dir`.
  static ImportLayout from_kv(const KeyValues& kv, const std::filesystem::path& base_dir = {});
};

/// Converts a raw little-endian f32 dump into a native split file and returns
/// the number of records written.
std::uint64_t import_external(const std::filesystem::path& data_path, const ImportLayout& layout,
                              const std::filesystem::path& out_path);

}  // namespace drad
