#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>

#include "drad/dataset.hpp"

namespace drad {

// Little-endian binary split file:
//   header (32 bytes): "DRAD" | format_version u16 | n_classes u16 |
//                      signal_length u32 | record_count u64 | 12 zero bytes
//   record:            class_index u16 | snr_db i16 | signal_length x (I f32, Q f32)
inline constexpr std::size_t kSplitHeaderBytes = 32;

constexpr std::size_t split_record_bytes(std::uint32_t signal_length) noexcept {
  return 4 + static_cast<std::size_t>(signal_length) * 8;
}

/// Streams records to disk; the header's record count is patched on close().
class SplitWriter {
 public:
  SplitWriter(const std::filesystem::path& path, std::uint16_t n_classes,
              std::uint32_t signal_length);
  ~SplitWriter();
  SplitWriter(const SplitWriter&) = delete;
  SplitWriter& operator=(const SplitWriter&) = delete;

  void write(const LabeledExample& example);
  void close();
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::uint16_t n_classes_;
  std::uint32_t signal_length_;
  std::uint64_t count_ = 0;
  std::vector<unsigned char> buf_;
};

void write_split(std::span<const LabeledExample> examples, const std::filesystem::path& path,
                 std::uint16_t n_classes);

/// Reads and validates a split file. Distinct DataError kinds for bad magic,
/// version mismatch, truncation and out-of-range labels.
SplitData read_split(const std::filesystem::path& path);

}  // namespace drad
