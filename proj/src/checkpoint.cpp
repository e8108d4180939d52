#include "drad/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "drad/byte_io.hpp"
#include "drad/dataset.hpp"
#include "drad/errors.hpp"

namespace drad {
namespace {
constexpr char kMagic[4] = {'D', 'R', 'L', 'M'};
constexpr std::uint16_t kCheckpointVersion = 1;
}  // namespace

InputDomain input_domain_from_name(const std::string& name) {
  if (name == "time") return InputDomain::Time;
  if (name == "autocorrelation") return InputDomain::Autocorrelation;
  throw ConfigError("invalid value for 'input_domain': '" + name + "' (expected time or autocorrelation)");
}

const char* input_domain_name(InputDomain d) noexcept {
  return d == InputDomain::Time ? "time" : "autocorrelation";
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  const auto& m = ckpt.model;
  std::vector<unsigned char> buf(kMagic, kMagic + 4);
  le::put_u16(buf, kCheckpointVersion);
  std::uint16_t flags = 0;
  if (m.gating == Gating::Swapped) flags |= 1;
  if (ckpt.domain == InputDomain::Autocorrelation) flags |= 2;
  le::put_u16(buf, flags);
  le::put_u32(buf, static_cast<std::uint32_t>(m.layers.size()));
  le::put_u32(buf, static_cast<std::uint32_t>(m.input_dim()));
  le::put_u32(buf, static_cast<std::uint32_t>(m.n_classes));
  for (const auto& l : m.layers) le::put_u32(buf, static_cast<std::uint32_t>(l.hidden));
  m.for_each_tensor([&](std::span<const float> t) {
    for (float v : t) le::put_f32(buf, v);
  });
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(DataError::Kind::Io, "cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw DataError(DataError::Kind::Io, "write failed for '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open '" + path.string() + "'");
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  const auto need = [&](std::size_t n) {
    if (pos + n > buf.size()) throw DataError(DataError::Kind::Truncated, "truncated checkpoint '" + path.string() + "'");
  };
  need(4);
  if (std::memcmp(buf.data(), kMagic, 4) != 0) {
    throw DataError(DataError::Kind::BadMagic, "bad magic in '" + path.string() + "'");
  }
  pos = 4;
  need(16);
  const auto version = le::get_u16(buf.data() + pos);
  if (version != kCheckpointVersion) {
    throw DataError(DataError::Kind::VersionMismatch, "checkpoint version " + std::to_string(version) + " not supported");
  }
  const auto flags = le::get_u16(buf.data() + pos + 2);
  const auto n_layers = le::get_u32(buf.data() + pos + 4);
  const auto input_dim = le::get_u32(buf.data() + pos + 8);
  const auto n_classes = le::get_u32(buf.data() + pos + 12);
  pos += 16;
  if (n_layers == 0 || n_layers > 64 || input_dim == 0 || n_classes == 0) {
    throw DataError(DataError::Kind::LengthMismatch, "implausible checkpoint dimensions");
  }
  need(4 * static_cast<std::size_t>(n_layers));
  Checkpoint ckpt;
  auto& m = ckpt.model;
  m.n_classes = n_classes;
  m.gating = (flags & 1) ? Gating::Swapped : Gating::Standard;
  ckpt.domain = (flags & 2) ? InputDomain::Autocorrelation : InputDomain::Time;
  std::size_t d = input_dim;
  for (std::uint32_t l = 0; l < n_layers; ++l) {
    const std::size_t h = le::get_u32(buf.data() + pos);
    pos += 4;
    if (h == 0 || h > 65536) throw DataError(DataError::Kind::LengthMismatch, "implausible hidden size");
    m.layers.emplace_back(d, h);
    d = h;
  }
  m.head_weights.resize(n_classes * d);
  m.head_bias.resize(n_classes);
  m.for_each_tensor([&](std::span<float> t) {
    need(4 * t.size());
    for (auto& v : t) {
      v = le::get_f32(buf.data() + pos);
      pos += 4;
    }
  });
  if (pos != buf.size()) throw DataError(DataError::Kind::LengthMismatch, "trailing bytes in checkpoint");
  return ckpt;
}

}  // namespace drad
