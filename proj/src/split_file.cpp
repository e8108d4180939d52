#include "drad/split_file.hpp"

#include <cstring>
#include <string>

#include "drad/byte_io.hpp"
#include "drad/errors.hpp"

namespace drad {
namespace {

constexpr char kMagic[4] = {'D', 'R', 'A', 'D'};

std::vector<unsigned char> encode_header(std::uint16_t n_classes, std::uint32_t signal_length,
                                         std::uint64_t count) {
  std::vector<unsigned char> h(kMagic, kMagic + 4);
  le::put_u16(h, kFormatVersion);
  le::put_u16(h, n_classes);
  le::put_u32(h, signal_length);
  le::put_u64(h, count);
  h.resize(kSplitHeaderBytes, 0);
  return h;
}

}  // namespace

SplitWriter::SplitWriter(const std::filesystem::path& path, std::uint16_t n_classes,
                         std::uint32_t signal_length)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc),
      n_classes_(n_classes), signal_length_(signal_length) {
  if (!out_) throw DataError(DataError::Kind::Io, "cannot write '" + path.string() + "'");
  const auto header = encode_header(n_classes, signal_length, 0);
  out_.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
  buf_.reserve(split_record_bytes(signal_length));
}

SplitWriter::~SplitWriter() {
  if (out_.is_open()) {
    try {
      close();
    } catch (...) {
    }
  }
}

void SplitWriter::write(const LabeledExample& ex) {
  if (ex.iq.size() != 2 * static_cast<std::size_t>(signal_length_)) {
    throw DataError(DataError::Kind::LengthMismatch,
                    "record length " + std::to_string(ex.iq.size() / 2) + " != " +
                        std::to_string(signal_length_));
  }
  if (ex.class_index >= n_classes_) {
    throw DataError(DataError::Kind::LabelOutOfRange,
                    "class_index " + std::to_string(ex.class_index) + " out of range");
  }
  buf_.clear();
  le::put_u16(buf_, ex.class_index);
  le::put_u16(buf_, static_cast<std::uint16_t>(ex.snr_db));
  for (float v : ex.iq) le::put_f32(buf_, v);
  out_.write(reinterpret_cast<const char*>(buf_.data()), static_cast<std::streamsize>(buf_.size()));
  if (!out_) throw DataError(DataError::Kind::Io, "write failed for '" + path_.string() + "'");
  ++count_;
}

void SplitWriter::close() {
  if (!out_.is_open()) return;
  const auto header = encode_header(n_classes_, signal_length_, count_);
  out_.seekp(0);
  out_.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
  out_.close();
  if (!out_) throw DataError(DataError::Kind::Io, "write failed for '" + path_.string() + "'");
}

void write_split(std::span<const LabeledExample> examples, const std::filesystem::path& path,
                 std::uint16_t n_classes) {
  if (examples.empty()) throw DataError(DataError::Kind::Empty, "refusing to write an empty split");
  SplitWriter writer(path, n_classes, static_cast<std::uint32_t>(examples.front().length()));
  for (const auto& ex : examples) writer.write(ex);
  writer.close();
}

SplitData read_split(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open '" + path.string() + "'");
  unsigned char header[kSplitHeaderBytes];
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (in.gcount() < 4 || std::memcmp(header, kMagic, 4) != 0) {
    throw DataError(DataError::Kind::BadMagic, "bad magic in '" + path.string() + "'");
  }
  if (in.gcount() != static_cast<std::streamsize>(sizeof header)) {
    throw DataError(DataError::Kind::Truncated, "truncated header in '" + path.string() + "'");
  }
  const std::uint16_t version = le::get_u16(header + 4);
  if (version != kFormatVersion) {
    throw DataError(DataError::Kind::VersionMismatch,
                    "format version " + std::to_string(version) + " not supported");
  }
  SplitData data;
  data.n_classes = le::get_u16(header + 6);
  data.signal_length = le::get_u32(header + 8);
  const std::uint64_t count = le::get_u64(header + 12);

  const std::size_t rec_bytes = split_record_bytes(data.signal_length);
  std::vector<unsigned char> rec(rec_bytes);
  std::vector<LabeledExample> examples;
  examples.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t r = 0; r < count; ++r) {
    in.read(reinterpret_cast<char*>(rec.data()), static_cast<std::streamsize>(rec_bytes));
    if (in.gcount() != static_cast<std::streamsize>(rec_bytes)) {
      throw DataError(DataError::Kind::Truncated,
                      "truncated record " + std::to_string(r) + " in '" + path.string() + "'");
    }
    LabeledExample ex;
    ex.class_index = le::get_u16(rec.data());
    ex.snr_db = static_cast<std::int16_t>(le::get_u16(rec.data() + 2));
    if (ex.class_index >= data.n_classes) {
      throw DataError(DataError::Kind::LabelOutOfRange,
                      "class_index " + std::to_string(ex.class_index) + " out of range in record " +
                          std::to_string(r));
    }
    ex.iq.resize(2 * static_cast<std::size_t>(data.signal_length));
    for (std::size_t i = 0; i < ex.iq.size(); ++i) ex.iq[i] = le::get_f32(rec.data() + 4 + 4 * i);
    examples.push_back(std::move(ex));
  }
  data.examples = std::move(examples);
  return data;
}

}  // namespace drad
