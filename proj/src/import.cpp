#include "drad/import.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "drad/byte_io.hpp"
#include "drad/dataset.hpp"
#include "drad/errors.hpp"
#include "drad/split_file.hpp"

namespace drad {
namespace {

std::vector<long> read_int_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open '" + path.string() + "'");
  std::vector<long> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    long v = 0;
    if (!(ss >> v)) throw DataError(DataError::Kind::Io, "bad integer in '" + path.string() + "'");
    out.push_back(v);
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  return p.empty() || p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

ImportLayout ImportLayout::from_kv(const KeyValues& kv, const std::filesystem::path& base_dir) {
  ImportLayout l;
  l.signal_length = static_cast<std::uint32_t>(kv.get_uint("signal_length"));
  const auto layout = kv.get_string("layout", "interleaved");
  if (layout != "interleaved" && layout != "planar") {
    throw ConfigError("invalid value for 'layout': '" + layout + "'");
  }
  l.interleaved = layout == "interleaved";
  l.n_classes = static_cast<std::uint16_t>(kv.get_uint("n_classes"));
  l.labels_path = resolve(kv.get_string("labels_path"), base_dir);
  l.snrs_path = resolve(kv.get_string("snrs_path", ""), base_dir);
  l.default_snr_db = static_cast<int>(kv.get_int("default_snr_db", 0));
  l.expected_length = static_cast<std::uint32_t>(kv.get_uint("expected_length", 1024));
  return l;
}

std::uint64_t import_external(const std::filesystem::path& data_path, const ImportLayout& layout,
                              const std::filesystem::path& out_path) {
  if (layout.signal_length != layout.expected_length) {
    throw DataError(DataError::Kind::LengthMismatch,
                    "record length " + std::to_string(layout.signal_length) +
                        " does not match the model input length " + std::to_string(layout.expected_length));
  }
  if (layout.n_classes == 0) throw ConfigError("invalid value for 'n_classes': 0");

  std::error_code ec;
  const auto bytes = std::filesystem::file_size(data_path, ec);
  if (ec) throw DataError(DataError::Kind::Io, "cannot stat '" + data_path.string() + "'");
  const std::size_t rec_bytes = static_cast<std::size_t>(layout.signal_length) * 2 * 4;
  if (bytes == 0) throw DataError(DataError::Kind::Empty, "'" + data_path.string() + "' is empty");
  if (bytes % rec_bytes != 0) {
    throw DataError(DataError::Kind::LengthMismatch,
                    "file size " + std::to_string(bytes) + " is not a multiple of the " +
                        std::to_string(rec_bytes) + "-byte record");
  }
  const std::uint64_t count = bytes / rec_bytes;

  const auto labels = read_int_lines(layout.labels_path);
  if (labels.size() != count) {
    throw DataError(DataError::Kind::LengthMismatch,
                    std::to_string(labels.size()) + " labels for " + std::to_string(count) + " records");
  }
  std::vector<long> snrs;
  if (!layout.snrs_path.empty()) {
    snrs = read_int_lines(layout.snrs_path);
    if (snrs.size() != count) {
      throw DataError(DataError::Kind::LengthMismatch,
                      std::to_string(snrs.size()) + " SNR values for " + std::to_string(count) + " records");
    }
  }

  std::ifstream in(data_path, std::ios::binary);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open '" + data_path.string() + "'");
  SplitWriter writer(out_path, layout.n_classes, layout.signal_length);
  std::vector<unsigned char> rec(rec_bytes);
  const std::size_t n = layout.signal_length;
  for (std::uint64_t r = 0; r < count; ++r) {
    in.read(reinterpret_cast<char*>(rec.data()), static_cast<std::streamsize>(rec_bytes));
    if (in.gcount() != static_cast<std::streamsize>(rec_bytes)) {
      throw DataError(DataError::Kind::Truncated, "truncated record " + std::to_string(r));
    }
    if (labels[r] < 0 || labels[r] >= layout.n_classes) {
      throw DataError(DataError::Kind::LabelOutOfRange,
                      "label " + std::to_string(labels[r]) + " out of range in record " + std::to_string(r));
    }
    LabeledExample ex;
    ex.class_index = static_cast<std::uint16_t>(labels[r]);
    ex.snr_db = static_cast<std::int16_t>(snrs.empty() ? layout.default_snr_db : snrs[r]);
    ex.iq.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t i_off = layout.interleaved ? 2 * i : i;
      const std::size_t q_off = layout.interleaved ? 2 * i + 1 : n + i;
      ex.iq[2 * i] = le::get_f32(rec.data() + 4 * i_off);
      ex.iq[2 * i + 1] = le::get_f32(rec.data() + 4 * q_off);
    }
    writer.write(ex);
  }
  writer.close();
  return count;
}

}  // namespace drad
