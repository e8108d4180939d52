#include "drad/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>

#include "drad/errors.hpp"
#include "drad/evaluation.hpp"
#include "drad/import.hpp"
#include "drad/parallel.hpp"
#include "drad/split_file.hpp"

namespace drad {

namespace {

namespace fs = std::filesystem;

constexpr std::array kKnownKeys = {
    // dataset
    "dataset", "dataset_name", "class_names", "snr_grid_db", "train_per_cell", "val_per_cell", "test_per_cell",
    "master_seed", "sample_rate_hz", "signal_length", "format_version", "train_records", "val_records",
    "test_records", "import_descriptor", "import_train", "import_val", "import_test",
    // model
    "layers", "hidden", "gating", "input_domain",
    // training
    "batch_size", "epochs", "lr_min", "lr_max", "cycle_epochs", "adam_beta1", "adam_beta2", "adam_eps", "seed",
    "micro_batch", "clip_norm", "backend", "train_snr_range",
    // evaluation and ablation
    "ablate_layers", "sensitivity_threshold"};

std::size_t positive(const KeyValues& kv, std::string_view key, std::size_t fallback) {
  const auto v = kv.get_uint(key, fallback);
  if (v == 0) throw ConfigError("invalid value for '" + std::string(key) + "': must be positive");
  return static_cast<std::size_t>(v);
}

Gating gating_from_name(const std::string& s) {
  if (s == "standard") return Gating::Standard;
  if (s == "swapped") return Gating::Swapped;
  throw ConfigError("invalid value for 'gating': '" + s + "' (expected standard or swapped)");
}

const char* gating_name(Gating g) { return g == Gating::Swapped ? "swapped" : "standard"; }

Backend backend_from_name(const std::string& s) {
  if (s == "openmp") return Backend::OpenMP;
  if (s == "serial") return Backend::Serial;
  throw ConfigError("invalid value for 'backend': '" + s + "' (expected openmp or serial)");
}

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

RunConfig RunConfig::from_kv(const KeyValues& kv, const fs::path& base_dir) {
  for (const auto& [key, value] : kv.entries()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  RunConfig rc;
  const std::string dataset = kv.get_string("dataset", kv.get_string("dataset_name", "deepradar2022"));
  switch (family_from_name(dataset)) {
    case DatasetFamily::DeepRadar2022: rc.manifest = deepradar2022_manifest(); break;
    case DatasetFamily::EightClass: rc.manifest = eightclass_manifest(); break;
    case DatasetFamily::Imported:
      rc.manifest = DatasetManifest{};
      rc.manifest.dataset_name = "imported";
      break;
  }
  auto& m = rc.manifest;
  if (kv.contains("class_names")) m.class_names = kv.get_list("class_names");
  if (kv.contains("snr_grid_db")) m.snr_grid_db = kv.get_int_list("snr_grid_db");
  m.train_per_cell = kv.get_uint("train_per_cell", m.train_per_cell);
  m.val_per_cell = kv.get_uint("val_per_cell", m.val_per_cell);
  m.test_per_cell = kv.get_uint("test_per_cell", m.test_per_cell);
  m.master_seed = kv.get_uint("master_seed", m.master_seed);
  m.sample_rate_hz = kv.get_double("sample_rate_hz", m.sample_rate_hz);
  m.signal_length = static_cast<std::uint32_t>(kv.get_uint("signal_length", m.signal_length));

  rc.import_descriptor = resolve(base_dir, kv.get_string("import_descriptor", ""));
  rc.import_train = resolve(base_dir, kv.get_string("import_train", ""));
  rc.import_val = resolve(base_dir, kv.get_string("import_val", ""));
  rc.import_test = resolve(base_dir, kv.get_string("import_test", ""));

  rc.layers = positive(kv, "layers", rc.layers);
  if (rc.layers > 3) throw ConfigError("invalid value for 'layers': must be 1, 2 or 3");
  rc.hidden = positive(kv, "hidden", rc.hidden);
  rc.gating = gating_from_name(kv.get_string("gating", gating_name(rc.gating)));
  try {
    rc.input_domain = input_domain_from_name(kv.get_string("input_domain", input_domain_name(rc.input_domain)));
  } catch (const ConfigError&) {
    throw ConfigError("invalid value for 'input_domain': '" + kv.get_string("input_domain") +
                      "' (expected time or autocorrelation)");
  }

  auto& t = rc.train;
  t.batch_size = positive(kv, "batch_size", t.batch_size);
  t.epochs = positive(kv, "epochs", t.epochs);
  t.lr_min = kv.get_double("lr_min", t.lr_min);
  t.lr_max = kv.get_double("lr_max", t.lr_max);
  t.cycle_epochs = positive(kv, "cycle_epochs", t.cycle_epochs);
  t.adam.beta1 = kv.get_double("adam_beta1", t.adam.beta1);
  t.adam.beta2 = kv.get_double("adam_beta2", t.adam.beta2);
  t.adam.eps = kv.get_double("adam_eps", t.adam.eps);
  t.seed = kv.get_uint("seed", t.seed);
  t.micro_batch = positive(kv, "micro_batch", t.micro_batch);
  t.clip_norm = kv.get_double("clip_norm", t.clip_norm);
  t.backend = backend_from_name(kv.get_string("backend", "openmp"));
  t.validate();

  if (kv.contains("train_snr_range")) {
    const auto text = kv.get_string("train_snr_range");
    const auto colon = text.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("no colon");
      const int lo = std::stoi(text.substr(0, colon));
      const int hi = std::stoi(text.substr(colon + 1));
      if (lo > hi) throw std::invalid_argument("empty range");
      rc.train_snr_range = {lo, hi};
    } catch (const std::exception&) {
      throw ConfigError("invalid value for 'train_snr_range': '" + text + "' (expected lo:hi)");
    }
  }

  if (kv.contains("ablate_layers")) {
    rc.ablate_layers.clear();
    for (int v : kv.get_int_list("ablate_layers")) {
      if (v < 1 || v > 3) throw ConfigError("invalid value for 'ablate_layers': entries must be 1, 2 or 3");
      rc.ablate_layers.push_back(static_cast<std::size_t>(v));
    }
    if (rc.ablate_layers.empty()) throw ConfigError("invalid value for 'ablate_layers': empty");
  }
  rc.sensitivity_threshold = kv.get_double("sensitivity_threshold", rc.sensitivity_threshold);
  if (!(rc.sensitivity_threshold > 0.0 && rc.sensitivity_threshold <= 1.0)) {
    throw ConfigError("invalid value for 'sensitivity_threshold': must lie in (0, 1]");
  }
  return rc;
}

KeyValues RunConfig::to_kv() const {
  KeyValues kv;
  kv.set("dataset", manifest.dataset_name);
  kv.set("class_names", join(manifest.class_names));
  kv.set("snr_grid_db", join_ints(manifest.snr_grid_db));
  kv.set("train_per_cell", std::to_string(manifest.train_per_cell));
  kv.set("val_per_cell", std::to_string(manifest.val_per_cell));
  kv.set("test_per_cell", std::to_string(manifest.test_per_cell));
  kv.set("master_seed", std::to_string(manifest.master_seed));
  kv.set("layers", std::to_string(layers));
  kv.set("hidden", std::to_string(hidden));
  kv.set("gating", gating_name(gating));
  kv.set("input_domain", input_domain_name(input_domain));
  kv.set("batch_size", std::to_string(train.batch_size));
  kv.set("epochs", std::to_string(train.epochs));
  kv.set("lr_min", fmt_double(train.lr_min));
  kv.set("lr_max", fmt_double(train.lr_max));
  kv.set("cycle_epochs", std::to_string(train.cycle_epochs));
  kv.set("adam_beta1", fmt_double(train.adam.beta1));
  kv.set("adam_beta2", fmt_double(train.adam.beta2));
  kv.set("adam_eps", fmt_double(train.adam.eps));
  kv.set("seed", std::to_string(train.seed));
  kv.set("micro_batch", std::to_string(train.micro_batch));
  kv.set("clip_norm", fmt_double(train.clip_norm));
  kv.set("backend", train.backend == Backend::Serial ? "serial" : "openmp");
  if (train_snr_range) {
    kv.set("train_snr_range", std::to_string(train_snr_range->first) + ":" + std::to_string(train_snr_range->second));
  }
  std::vector<int> ab(ablate_layers.begin(), ablate_layers.end());
  kv.set("ablate_layers", join_ints(ab));
  kv.set("sensitivity_threshold", fmt_double(sensitivity_threshold));
  return kv;
}

namespace {

struct Session {
  std::ostream& out;
  std::ostream& err;
  std::string config_path;
  KeyValues overrides;

  RunConfig config() const {
    KeyValues kv;
    fs::path base;
    if (!config_path.empty()) {
      kv = KeyValues::load(config_path);
      base = fs::path(config_path).parent_path();
    }
    kv.merge(overrides);
    return RunConfig::from_kv(kv, base);
  }
};

void create_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError(DataError::Kind::Io, "cannot create '" + dir.string() + "': " + ec.message());
}

/// Loads a split from `data_dir`, or generates it from the manifest when no
/// directory was given.
SplitData load_split(const RunConfig& rc, const std::string& data_dir, Split split) {
  if (!data_dir.empty()) return read_split(split_path(data_dir, split));
  if (family_from_name(rc.manifest.dataset_name) == DatasetFamily::Imported) {
    throw ConfigError("imported datasets need --data");
  }
  rc.manifest.validate();
  return generate_split(rc.manifest, split);
}

/// Class names of a data directory's manifest, else of the config.
std::vector<std::string> class_names_for(const RunConfig& rc, const std::string& data_dir, std::size_t n) {
  std::vector<std::string> names = rc.manifest.class_names;
  if (!data_dir.empty()) {
    const auto mpath = fs::path(data_dir) / "manifest.txt";
    if (fs::exists(mpath)) names = KeyValues::load(mpath).get_list("class_names");
  }
  if (names.size() != n) {
    names.clear();
    for (std::size_t i = 0; i < n; ++i) names.push_back("class" + std::to_string(i));
  }
  return names;
}

void prepare_input(SplitData& split, InputDomain domain) {
  if (domain == InputDomain::Autocorrelation) to_autocorrelation_domain(split);
}

struct TrainedRun {
  TrainResult result;
  Checkpoint best;
};

TrainedRun train_model(const Session& s, const RunConfig& rc, const std::string& data_dir, std::size_t layers) {
  auto train_split = load_split(rc, data_dir, Split::Train);
  auto val_split = load_split(rc, data_dir, Split::Val);
  if (rc.train_snr_range) filter_snr(train_split, rc.train_snr_range->first, rc.train_snr_range->second);
  prepare_input(train_split, rc.input_domain);
  prepare_input(val_split, rc.input_domain);

  const auto hidden = rc.hidden_sizes(layers);
  auto model = init_model<float>(train_split.n_classes, hidden, rc.train.seed, 2, rc.gating);
  s.err << "training " << layers << "-layer model (hidden " << rc.hidden << ", " << train_split.examples.size()
        << " train / " << val_split.examples.size() << " val examples)\n";
  TrainedRun run;
  run.result = train(train_split, val_split, rc.train, std::move(model), [&](const EpochRecord& r) {
    char line[128];
    std::snprintf(line, sizeof line, "  epoch %zu/%zu  loss %.4f  val %.4f  lr %.3g\n", r.epoch, rc.train.epochs,
                  r.train_loss, r.val_accuracy, r.lr);
    s.err << line << std::flush;
  });
  run.best = {run.result.best_model, rc.input_domain};
  return run;
}

void write_run_outputs(const TrainedRun& run, const RunConfig& rc, const fs::path& out_dir) {
  create_dir(out_dir);
  save_checkpoint(run.best, out_dir / "model.drlm");
  save_checkpoint({run.result.model, rc.input_domain}, out_dir / "last.drlm");
  write_history_csv(run.result.history, out_dir / "history.csv");
  rc.to_kv().save(out_dir / "run.cfg");
}

int cmd_gen(const Session& s, const std::string& out_dir) {
  const auto rc = s.config();
  const fs::path out(out_dir);
  if (family_from_name(rc.manifest.dataset_name) == DatasetFamily::Imported) {
    if (rc.import_descriptor.empty()) throw ConfigError("invalid value for 'import_descriptor': required");
    const auto layout = ImportLayout::from_kv(KeyValues::load(rc.import_descriptor), rc.import_descriptor.parent_path());
    create_dir(out);
    KeyValues manifest;
    manifest.set("dataset_name", "imported");
    manifest.set("class_names", join(rc.manifest.class_names));
    manifest.set("signal_length", std::to_string(layout.signal_length));
    const std::array<std::pair<Split, fs::path>, 3> raw = {
        {{Split::Train, rc.import_train}, {Split::Val, rc.import_val}, {Split::Test, rc.import_test}}};
    for (const auto& [split, path] : raw) {
      if (path.empty()) throw ConfigError(std::string("invalid value for 'import_") + split_name(split) + "': required");
      const auto n = import_external(path, layout, split_path(out, split));
      manifest.set(std::string(split_name(split)) + "_records", std::to_string(n));
      s.out << split_name(split) << ": " << n << " records\n";
    }
    manifest.save(out / "manifest.txt");
    return kExitOk;
  }
  rc.manifest.validate();
  s.err << "generating " << rc.manifest.total_count() << " records into " << out.string() << "\n";
  build_dataset(rc.manifest, out);
  for (Split sp : {Split::Train, Split::Val, Split::Test}) {
    s.out << split_name(sp) << ": " << rc.manifest.split_count(sp) << " records\n";
  }
  return kExitOk;
}

int cmd_train(const Session& s, const std::string& data_dir, const std::string& out_dir) {
  const auto rc = s.config();
  const auto run = train_model(s, rc, data_dir, rc.layers);
  write_run_outputs(run, rc, out_dir);
  char line[96];
  std::snprintf(line, sizeof line, "best epoch %zu, validation accuracy %.4f\n", run.result.best_epoch,
                run.result.best_val_accuracy);
  s.out << line;
  return kExitOk;
}

int cmd_eval(const Session& s, const std::string& model_path, const std::string& data_dir, const std::string& out_dir) {
  const auto rc = s.config();
  const auto ckpt = load_checkpoint(model_path);
  auto test = load_split(rc, data_dir, Split::Test);
  if (test.n_classes != ckpt.model.n_classes) {
    throw DataError(DataError::Kind::LabelOutOfRange, "test split has " + std::to_string(test.n_classes) +
                                                          " classes, model has " + std::to_string(ckpt.model.n_classes));
  }
  prepare_input(test, ckpt.domain);
  const auto preds = predict(ckpt.model, test, rc.train.backend);
  const auto names = class_names_for(rc, data_dir, test.n_classes);
  const auto report = build_report(preds, test, names, {}, rc.sensitivity_threshold);
  for (const auto& w : report.curves.warnings) s.err << "warning: " << w << "\n";
  emit_report(report, out_dir);

  char line[96];
  std::snprintf(line, sizeof line, "test accuracy %.4f over %zu examples\n", accuracy(preds, test),
                test.examples.size());
  s.out << line;
  const auto& overall = report.sensitivities.front();
  s.out << "sensitivity (" << overall.threshold << "): "
        << (overall.snr_db ? std::to_string(*overall.snr_db) + " dB" : std::string("not reached")) << "\n";
  return kExitOk;
}

int cmd_ablate(const Session& s, const std::string& data_dir, const std::string& out_dir) {
  const auto rc = s.config();
  const fs::path out(out_dir);
  create_dir(out);
  auto test = load_split(rc, data_dir, Split::Test);
  prepare_input(test, rc.input_domain);
  const auto names = class_names_for(rc, data_dir, test.n_classes);

  std::vector<AccuracyCurve> curves;
  std::string summary = "layers,lstm_parameters,best_epoch,best_val_accuracy,test_accuracy\n";
  for (std::size_t layers : rc.ablate_layers) {
    const auto run = train_model(s, rc, data_dir, layers);
    write_run_outputs(run, rc, out / ("layers_" + std::to_string(layers)));
    const auto preds = predict(run.best.model, test, rc.train.backend);
    auto set = accuracy_by_snr(preds, test, names);
    set.overall.class_name = std::to_string(layers) + "-layer";
    curves.push_back(set.overall);

    char line[128];
    std::snprintf(line, sizeof line, "%zu,%zu,%zu,%.6f,%.6f\n", layers, count_params(run.best.model).lstm,
                  run.result.best_epoch, run.result.best_val_accuracy, accuracy(preds, test));
    summary += line;
    s.out << line;
  }
  std::ofstream(out / "ablation_summary.csv", std::ios::binary) << summary;
  std::ofstream(out / "ablation_curves.csv", std::ios::binary) << curves_csv(curves);
  std::ofstream(out / "ablation_curves.svg", std::ios::binary)
      << render_curves_svg(curves, "Accuracy vs SNR by number of LSTM layers");
  if (!fs::exists(out / "ablation_curves.svg")) throw DataError(DataError::Kind::Io, "cannot write ablation outputs");
  return kExitOk;
}

void print_params(std::ostream& out, const ParamCount& pc) {
  out << "lstm_parameters: " << pc.lstm << "\n";
  out << "head_parameters: " << pc.head << "\n";
  out << "total_parameters: " << pc.total() << "\n";
}

int cmd_inspect(const Session& s, const std::string& model_path, const std::string& data_dir) {
  if (!model_path.empty()) {
    const auto ckpt = load_checkpoint(model_path);
    const auto& m = ckpt.model;
    s.out << "model: " << model_path << "\n";
    s.out << "layers: " << m.layers.size() << "\n";
    s.out << "hidden:";
    for (const auto& l : m.layers) s.out << ' ' << l.hidden;
    s.out << "\ninput_dim: " << m.input_dim() << "\n";
    s.out << "n_classes: " << m.n_classes << "\n";
    s.out << "gating: " << gating_name(m.gating) << "\n";
    s.out << "input_domain: " << input_domain_name(ckpt.domain) << "\n";
    print_params(s.out, count_params(m));
    return kExitOk;
  }
  if (!data_dir.empty()) {
    s.out << "data: " << data_dir << "\n";
    const auto mpath = fs::path(data_dir) / "manifest.txt";
    if (fs::exists(mpath)) s.out << KeyValues::load(mpath).dump();
    for (Split sp : {Split::Train, Split::Val, Split::Test}) {
      const auto split = read_split(split_path(data_dir, sp));
      s.out << split_name(sp) << ": " << split.examples.size() << " records, " << split.n_classes << " classes, "
            << split.signal_length << " samples\n";
    }
    return kExitOk;
  }
  const auto rc = s.config();
  rc.manifest.validate();
  s.out << "dataset: " << rc.manifest.dataset_name << "\n";
  s.out << "classes: " << rc.manifest.class_names.size() << "\n";
  s.out << "snr_grid_db: " << join_ints(rc.manifest.snr_grid_db) << "\n";
  for (Split sp : {Split::Train, Split::Val, Split::Test}) {
    s.out << split_name(sp) << "_records: " << rc.manifest.split_count(sp) << " (" << rc.manifest.per_cell(sp)
          << " per cell)\n";
  }
  s.out << "total_records: " << rc.manifest.total_count() << "\n";
  s.out << "model: " << rc.layers << " x " << rc.hidden << " (" << gating_name(rc.gating) << " gating, "
        << input_domain_name(rc.input_domain) << " input)\n";
  print_params(s.out, count_params(2, rc.hidden_sizes(rc.layers), rc.manifest.class_names.size()));
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radar waveform dataset generator and LSTM classifier workbench", "drad"};
  app.require_subcommand(1);
  app.fallthrough();

  Session s{out, err, {}, {}};
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = runtime default)")->envname("DRAD_THREADS");

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", s.config_path, "Key/value config file");
    cmd->add_option_function<std::vector<std::string>>(
        "--set",
        [&](const std::vector<std::string>& items) {
          for (const auto& item : items) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value, got " + item);
            s.overrides.set(item.substr(0, eq), item.substr(eq + 1));
          }
        },
        "Override any config key (key=value), repeatable");
  };
  const auto add_key = [&](CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(flag, [&s, key](const std::string& v) { s.overrides.set(key, v); }, help);
  };
  const auto add_dataset_keys = [&](CLI::App* cmd) {
    add_key(cmd, "--dataset", "dataset", "deepradar2022, eightclass or imported");
    add_key(cmd, "--classes", "class_names", "Comma-separated class names");
    add_key(cmd, "--snr-grid", "snr_grid_db", "SNR grid, list or lo:step:hi");
  };
  const auto add_train_keys = [&](CLI::App* cmd) {
    add_dataset_keys(cmd);
    add_key(cmd, "--seed", "seed", "Training seed (initialization and shuffling)");
    add_key(cmd, "--layers", "layers", "Stacked LSTM layers (1, 2 or 3)");
    add_key(cmd, "--hidden", "hidden", "Hidden units per layer");
    add_key(cmd, "--gating", "gating", "standard or swapped");
    add_key(cmd, "--input-domain", "input_domain", "time or autocorrelation");
    add_key(cmd, "--train-snr-range", "train_snr_range", "Keep training examples with SNR in lo:hi");
    add_key(cmd, "--epochs", "epochs", "Training epochs");
    add_key(cmd, "--batch-size", "batch_size", "Mini-batch size");
    add_key(cmd, "--backend", "backend", "openmp or serial kernels");
  };

  std::string out_dir, data_dir, model_path;

  auto* gen = app.add_subcommand("gen", "Generate dataset split files and manifest");
  add_common(gen);
  add_dataset_keys(gen);
  add_key(gen, "--seed", "master_seed", "Dataset master seed");
  gen->add_option("--out", out_dir, "Output directory")->required();

  auto* tr = app.add_subcommand("train", "Train a model; writes checkpoint and history CSV");
  add_common(tr);
  add_train_keys(tr);
  tr->add_option("--data", data_dir, "Dataset directory (default: generate in memory)");
  tr->add_option("--out", out_dir, "Output directory")->required();

  auto* ev = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
  add_common(ev);
  add_dataset_keys(ev);
  add_key(ev, "--threshold", "sensitivity_threshold", "Accuracy threshold for the sensitivity metric");
  ev->add_option("--model", model_path, "Checkpoint file")->required();
  ev->add_option("--data", data_dir, "Dataset directory (default: generate in memory)");
  ev->add_option("--out", out_dir, "Report directory")->required();

  auto* ab = app.add_subcommand("ablate-layers", "Train 1/2/3-layer variants and compare accuracy vs SNR");
  add_common(ab);
  add_train_keys(ab);
  add_key(ab, "--layer-counts", "ablate_layers", "Layer counts to compare (default 1,2,3)");
  ab->add_option("--data", data_dir, "Dataset directory (default: generate in memory)");
  ab->add_option("--out", out_dir, "Output directory")->required();

  auto* in = app.add_subcommand("inspect", "Print manifest or model summaries with parameter counts");
  add_common(in);
  add_train_keys(in);
  in->add_option("--model", model_path, "Checkpoint file");
  in->add_option("--data", data_dir, "Dataset directory");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    if (dynamic_cast<const CLI::RequiredError*>(&e) == nullptr) err << app.help();
    return kExitUsage;
  }

  try {
    set_thread_count(threads);
    if (gen->parsed()) return cmd_gen(s, out_dir);
    if (tr->parsed()) return cmd_train(s, data_dir, out_dir);
    if (ev->parsed()) return cmd_eval(s, model_path, data_dir, out_dir);
    if (ab->parsed()) return cmd_ablate(s, data_dir, out_dir);
    if (in->parsed()) return cmd_inspect(s, model_path, data_dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace drad
