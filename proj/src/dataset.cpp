#include "drad/dataset.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "drad/errors.hpp"
#include "drad/parallel.hpp"
#include "drad/split_file.hpp"
#include "drad/waveforms.hpp"

namespace drad {

const char* split_name(Split s) noexcept {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "?";
}

DatasetFamily family_from_name(const std::string& name) {
  if (name == "deepradar2022") return DatasetFamily::DeepRadar2022;
  if (name == "eightclass") return DatasetFamily::EightClass;
  if (name == "imported") return DatasetFamily::Imported;
  throw ConfigError("invalid value for 'dataset_name': '" + name +
                    "' (expected deepradar2022, eightclass or imported)");
}

std::uint64_t DatasetManifest::per_cell(Split s) const noexcept {
  switch (s) {
    case Split::Train: return train_per_cell;
    case Split::Val: return val_per_cell;
    case Split::Test: return test_per_cell;
  }
  return 0;
}

void DatasetManifest::validate() const {
  const auto family = family_from_name(dataset_name);
  if (class_names.empty()) throw ConfigError("invalid value for 'class_names': empty");
  if (class_names.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw ConfigError("invalid value for 'class_names': too many classes");
  }
  std::set<std::string> seen;
  for (const auto& name : class_names) {
    if (!seen.insert(name).second) {
      throw ConfigError("invalid value for 'class_names': duplicate '" + name + "'");
    }
    if (family == DatasetFamily::DeepRadar2022 && !radar_class_from_name(name)) {
      throw ConfigError("invalid value for 'class_names': '" + name + "' is not a DeepRadar2022 class");
    }
    if (family == DatasetFamily::EightClass && !eight_class_from_name(name)) {
      throw ConfigError("invalid value for 'class_names': '" + name + "' is not an 8-class family");
    }
  }
  if (snr_grid_db.empty()) throw ConfigError("invalid value for 'snr_grid_db': empty");
  for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
    if (snr_grid_db[i] < std::numeric_limits<std::int16_t>::min() ||
        snr_grid_db[i] > std::numeric_limits<std::int16_t>::max()) {
      throw ConfigError("invalid value for 'snr_grid_db': out of 16-bit range");
    }
    if (i > 0 && snr_grid_db[i] <= snr_grid_db[i - 1]) {
      throw ConfigError("invalid value for 'snr_grid_db': must be strictly increasing");
    }
  }
  if (signal_length < 2) throw ConfigError("invalid value for 'signal_length'");
  if (family != DatasetFamily::Imported && signal_length != kSignalLength) {
    throw ConfigError("invalid value for 'signal_length': generators emit 1024 samples");
  }
  if (!(sample_rate_hz > 0.0)) throw ConfigError("invalid value for 'sample_rate_hz'");
  if (format_version != kFormatVersion) {
    throw ConfigError("invalid value for 'format_version': expected " + std::to_string(kFormatVersion));
  }
}

KeyValues DatasetManifest::to_kv() const {
  KeyValues kv;
  kv.set("format_version", std::to_string(format_version));
  kv.set("dataset_name", dataset_name);
  kv.set("class_names", join(class_names));
  kv.set("snr_grid_db", join_ints(snr_grid_db));
  kv.set("train_per_cell", std::to_string(train_per_cell));
  kv.set("val_per_cell", std::to_string(val_per_cell));
  kv.set("test_per_cell", std::to_string(test_per_cell));
  kv.set("master_seed", std::to_string(master_seed));
  char rate[64];
  std::snprintf(rate, sizeof rate, "%.17g", sample_rate_hz);
  kv.set("sample_rate_hz", rate);
  kv.set("signal_length", std::to_string(signal_length));
  kv.set("train_records", std::to_string(split_count(Split::Train)));
  kv.set("val_records", std::to_string(split_count(Split::Val)));
  kv.set("test_records", std::to_string(split_count(Split::Test)));
  return kv;
}

DatasetManifest DatasetManifest::from_kv(const KeyValues& kv) {
  DatasetManifest m;
  m.dataset_name = kv.get_string("dataset_name", m.dataset_name);
  m.class_names = kv.get_list("class_names");
  m.snr_grid_db = kv.get_int_list("snr_grid_db");
  m.train_per_cell = kv.get_uint("train_per_cell");
  m.val_per_cell = kv.get_uint("val_per_cell");
  m.test_per_cell = kv.get_uint("test_per_cell");
  m.master_seed = kv.get_uint("master_seed");
  m.sample_rate_hz = kv.get_double("sample_rate_hz", m.sample_rate_hz);
  m.signal_length = static_cast<std::uint32_t>(kv.get_uint("signal_length", m.signal_length));
  m.format_version = static_cast<std::uint16_t>(kv.get_uint("format_version", m.format_version));
  return m;
}

DatasetManifest deepradar2022_manifest(std::uint64_t master_seed) {
  DatasetManifest m;
  m.dataset_name = "deepradar2022";
  for (auto c : all_radar_classes()) m.class_names.emplace_back(class_name(c));
  m.snr_grid_db = parse_int_grid("-12:2:20");
  m.train_per_cell = 1200;
  m.val_per_cell = 400;
  m.test_per_cell = 400;
  m.master_seed = master_seed;
  return m;
}

DatasetManifest eightclass_manifest(std::uint64_t master_seed) {
  DatasetManifest m;
  m.dataset_name = "eightclass";
  for (auto c : all_eight_classes()) m.class_names.emplace_back(class_name(c));
  m.snr_grid_db = parse_int_grid("-20:2:20");
  m.train_per_cell = 1200;
  m.val_per_cell = 400;
  m.test_per_cell = 400;
  m.master_seed = master_seed;
  return m;
}

std::vector<cplx> LabeledExample::samples() const {
  std::vector<cplx> out(iq.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cplx(iq[2 * i], iq[2 * i + 1]);
  return out;
}

std::vector<float> LabeledExample::interleave(std::span<const cplx> samples) {
  std::vector<float> out(samples.size() * 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[2 * i] = static_cast<float>(samples[i].real());
    out[2 * i + 1] = static_cast<float>(samples[i].imag());
  }
  return out;
}

std::uint64_t example_seed(std::uint64_t master_seed, std::size_t class_index, int snr_db,
                           Split split, std::uint64_t index) noexcept {
  return hash_seed({master_seed, static_cast<std::uint64_t>(class_index),
                    static_cast<std::uint64_t>(static_cast<std::int64_t>(snr_db)),
                    static_cast<std::uint64_t>(split), index});
}

std::vector<cplx> clean_signal(const DatasetManifest& manifest, std::size_t class_index,
                               CounterRng& rng) {
  const auto& name = manifest.class_names.at(class_index);
  switch (family_from_name(manifest.dataset_name)) {
    case DatasetFamily::DeepRadar2022: {
      const auto c = radar_class_from_name(name);
      if (!c) throw ConfigError("unknown DeepRadar2022 class '" + name + "'");
      const auto spec = sample_spec(*c, rng);
      return synthesize(spec, rng).samples;
    }
    case DatasetFamily::EightClass: {
      const auto c = eight_class_from_name(name);
      if (!c) throw ConfigError("unknown 8-class family '" + name + "'");
      return synthesize_8class(*c, rng).samples;
    }
    case DatasetFamily::Imported:
      break;
  }
  throw ConfigError("imported datasets cannot be generated");
}

LabeledExample generate_example(const DatasetManifest& manifest, std::size_t class_index,
                                int snr_db, Split split, std::uint64_t index) {
  const CounterRng root(example_seed(manifest.master_seed, class_index, snr_db, split, index));
  CounterRng signal_rng = root.fork(1);
  CounterRng noise_rng = root.fork(2);
  const auto clean = clean_signal(manifest, class_index, signal_rng);
  const auto noisy = apply_snr(clean, NoiseSpec(snr_db), noise_rng);
  LabeledExample ex;
  ex.iq = LabeledExample::interleave(noisy);
  ex.class_index = static_cast<std::uint16_t>(class_index);
  ex.snr_db = static_cast<std::int16_t>(snr_db);
  return ex;
}

CellPosition locate_record(const DatasetManifest& manifest, Split split, std::uint64_t position) {
  const std::uint64_t pc = manifest.per_cell(split);
  const std::uint64_t cell = position / pc;
  return {static_cast<std::size_t>(cell / manifest.snr_grid_db.size()),
          static_cast<std::size_t>(cell % manifest.snr_grid_db.size()), position % pc};
}

std::filesystem::path split_path(const std::filesystem::path& dir, Split split) {
  return dir / (std::string(split_name(split)) + ".drad");
}

namespace {

void generate_block(const DatasetManifest& manifest, Split split, std::uint64_t first,
                    std::vector<LabeledExample>& block) {
  parallel_for(static_cast<std::int64_t>(block.size()), [&](std::int64_t i) {
    const auto pos = locate_record(manifest, split, first + static_cast<std::uint64_t>(i));
    block[static_cast<std::size_t>(i)] =
        generate_example(manifest, pos.class_index, manifest.snr_grid_db[pos.snr_index], split, pos.index);
  });
}

}  // namespace

void build_dataset(const DatasetManifest& manifest, const std::filesystem::path& out_dir,
                   const BuildOptions& options) {
  manifest.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw DataError(DataError::Kind::Io, "cannot create '" + out_dir.string() + "': " + ec.message());

  const auto n_classes = static_cast<std::uint16_t>(manifest.class_names.size());
  const std::size_t block_size = std::max<std::size_t>(1, options.block_records);
  for (Split split : {Split::Train, Split::Val, Split::Test}) {
    SplitWriter writer(split_path(out_dir, split), n_classes, manifest.signal_length);
    const std::uint64_t total = manifest.split_count(split);
    std::vector<LabeledExample> block;
    for (std::uint64_t first = 0; first < total; first += block_size) {
      block.assign(static_cast<std::size_t>(std::min<std::uint64_t>(block_size, total - first)), {});
      generate_block(manifest, split, first, block);
      for (const auto& ex : block) writer.write(ex);
    }
    writer.close();
  }
  manifest.to_kv().save(out_dir / "manifest.txt");
}

SplitData generate_split(const DatasetManifest& manifest, Split split) {
  manifest.validate();
  SplitData data;
  data.n_classes = static_cast<std::uint16_t>(manifest.class_names.size());
  data.signal_length = manifest.signal_length;
  data.examples.resize(static_cast<std::size_t>(manifest.split_count(split)));
  generate_block(manifest, split, 0, data.examples);
  return data;
}

void to_autocorrelation_domain(SplitData& split) {
  parallel_for(static_cast<std::int64_t>(split.examples.size()), [&](std::int64_t i) {
    auto& ex = split.examples[static_cast<std::size_t>(i)];
    ex.iq = LabeledExample::interleave(autocorrelation(ex.samples()));
  });
}

void filter_snr(SplitData& split, int snr_min, int snr_max) {
  std::erase_if(split.examples, [&](const LabeledExample& ex) {
    return ex.snr_db < snr_min || ex.snr_db > snr_max;
  });
}

}  // namespace drad
