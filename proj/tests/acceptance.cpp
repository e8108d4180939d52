// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "drad/cli.hpp"
#include "drad/dataset.hpp"
#include "drad/evaluation.hpp"
#include "drad/lstm.hpp"
#include "drad/split_file.hpp"
#include "drad/waveforms.hpp"
#include "grad_check.hpp"
#include "oracles.hpp"
#include "scratch_dir.hpp"

using namespace drad;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_command(args, o, e);
  if (out) *out = o.str();
  if (code != 0) std::fprintf(stderr, "%s", e.str().c_str());
  return code;
}

std::filesystem::path preset(const char* name) { return std::filesystem::path(DRAD_CONFIG_DIR) / name; }

// Rows of a small CSV with a header line, as string vectors.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

Outcome parameter_counts() {
  Outcome o;
  const std::vector<std::size_t> h{128, 128, 128};
  const auto model = init_model<float>(23, h, 1);
  const auto pc = count_params(model);
  o.require(pc.lstm == 330240, "LSTM stack " + std::to_string(pc.lstm));
  for (auto [n, expect] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 1032}, {23, 2967}, {24, 3096}}) {
    const auto head = count_params(2, h, n).head;
    o.require(head == expect, std::to_string(n) + "-class head " + std::to_string(head));
  }
  o.detail = o.pass ? "lstm 330240, heads 1032/2967/3096" : o.detail;
  return o;
}

Outcome dataset_totals() {
  Outcome o;
  const auto m = deepradar2022_manifest();
  o.require(m.split_count(Split::Train) == 469200, "train total");
  o.require(m.split_count(Split::Val) == 156400, "val total");
  o.require(m.split_count(Split::Test) == 156400, "test total");
  o.require(m.total_count() == 782000, "grand total");
  o.require(m.per_cell(Split::Train) == 1200 && m.per_cell(Split::Val) == 400 && m.per_cell(Split::Test) == 400,
            "per-cell counts");

  auto small = m;
  small.class_names = {"NM", "LFM", "Noise"};
  small.snr_grid_db = {10, 20};
  small.train_per_cell = 12;
  small.val_per_cell = 4;
  small.test_per_cell = 4;
  ScratchDir dir("acc_counts");
  build_dataset(small, dir.path());
  std::uint64_t records = 0;
  for (Split s : {Split::Train, Split::Val, Split::Test}) {
    const auto split = read_split(split_path(dir.path(), s));
    std::map<std::pair<int, int>, std::uint64_t> cells;
    for (const auto& ex : split.examples) ++cells[{ex.class_index, ex.snr_db}];
    o.require(cells.size() == 6, std::string(split_name(s)) + " cell count");
    for (const auto& [cell, n] : cells) o.require(n == small.per_cell(s), std::string(split_name(s)) + " cell balance");
    records += split.examples.size();
  }
  o.require(records == 6 * 20, "smoke record count " + std::to_string(records));
  if (o.pass) o.detail = "469200/156400/156400 (782000); 3x2 build counted exhaustively (120 records)";
  return o;
}

Outcome code_oracles() {
  Outcome o;
  for (int lc : {5, 7, 11, 13}) {
    const auto r = oracle::aperiodic_autocorr(barker_sequence(lc).entries);
    double psl = 0.0;
    for (std::size_t k = 1; k < r.size(); ++k) psl = std::max(psl, std::abs(r[k]));
    o.require(std::abs(psl - 1.0) < 1e-12, "Barker-" + std::to_string(lc) + " sidelobe " + fmt("%.3g", psl));
  }
  double zc_worst = 0.0;
  for (int m : {16, 25, 36, 49, 64})
    for (int r : {11, 13}) {
      const auto rc = oracle::cyclic_autocorr(zadoff_chu(m, r).entries);
      for (std::size_t k = 1; k < rc.size(); ++k) zc_worst = std::max(zc_worst, std::abs(rc[k]));
    }
  o.require(zc_worst < 1e-9, "Zadoff-Chu sidelobe " + fmt("%.3g", zc_worst));

  auto costas_ok = [](const std::vector<int>& p) {
    for (std::size_t h = 1; h < p.size(); ++h) {
      std::set<int> seen;
      for (std::size_t i = 0; i + h < p.size(); ++i)
        if (!seen.insert(p[i + h] - p[i]).second) return false;
    }
    return true;
  };
  std::size_t costas_checked = 0;
  for (int m = 3; m <= 6; ++m)
    for (const auto& p : costas_arrays(m)) {
      o.require(costas_ok(p), "stored Costas array fails");
      ++costas_checked;
    }
  CounterRng rng(3);
  for (int i = 0; i < 10000; ++i) {
    o.require(costas_ok(costas_array(3 + static_cast<int>(rng.index(4)), rng)), "drawn Costas array fails");
    ++costas_checked;
  }

  double huff_worst = 0.0;
  for (int m : {16, 25, 36, 49, 64})
    for (int s_db : {-63, -60, -56}) {
      const auto r = oracle::aperiodic_autocorr(huffman_sequence(m, s_db).entries);
      const double end_db = 20 * std::log10(std::abs(r.back()) / std::abs(r[0]));
      huff_worst = std::max(huff_worst, std::abs(end_db - s_db));
    }
  o.require(huff_worst <= 0.5, "Huffman end lobe off by " + fmt("%.3f", huff_worst) + " dB");

  double mod_worst = 0.0;
  auto unit = [&](const CodeSequence& c) {
    for (const auto& e : c.entries) mod_worst = std::max(mod_worst, std::abs(std::abs(e) - 1.0));
  };
  for (int m : {4, 5, 6, 7, 8})
    for (Polyphase v : {Polyphase::Frank, Polyphase::P1, Polyphase::Px}) unit(polyphase_code(v, m));
  for (int m : {4, 6, 8}) unit(polyphase_code(Polyphase::P2, m));
  for (int m : {16, 25, 36, 49, 64})
    for (Polyphase v : {Polyphase::P3, Polyphase::P4}) unit(polyphase_code(v, m));
  o.require(mod_worst < 1e-12, "polyphase modulus error " + fmt("%.3g", mod_worst));

  if (o.pass) {
    o.detail = "ZC sidelobe max " + fmt("%.2g", zc_worst) + ", Huffman end lobe within " + fmt("%.3f", huff_worst) +
               " dB, " + std::to_string(costas_checked) + " Costas arrays, modulus error " + fmt("%.2g", mod_worst);
  }
  return o;
}

Outcome signal_calibration() {
  Outcome o;
  // 1e5 generated examples at 6 dB; the clean signal is re-derived from the
  // same seed and the residual is the noise actually added.
  auto m = deepradar2022_manifest(606);
  const double A = NoiseSpec(6.0).amplitude_scale();
  double noise_power = 0.0, power_worst = 0.0;
  std::uint64_t samples = 0;
  const std::uint64_t n_examples = 100000;
  for (std::uint64_t i = 0; i < n_examples; ++i) {
    const std::size_t c = static_cast<std::size_t>(i % m.class_names.size());
    const auto ex = generate_example(m, c, 6, Split::Train, i);
    CounterRng signal_rng = CounterRng(example_seed(m.master_seed, c, 6, Split::Train, i)).fork(1);
    const auto clean = clean_signal(m, c, signal_rng);
    power_worst = std::max(power_worst, std::abs(oracle::mean_power(clean) - 1.0));
    const auto noisy = ex.samples();
    for (std::size_t k = 0; k < clean.size(); ++k) noise_power += std::norm(noisy[k] - A * clean[k]);
    samples += clean.size();
  }
  const double snr = 10 * std::log10(A * A / (noise_power / static_cast<double>(samples)));
  o.require(std::abs(snr - 6.0) <= 0.1, "empirical SNR " + fmt("%.4f", snr) + " dB");
  o.require(power_worst < 1e-6, "clean power error " + fmt("%.3g", power_worst));
  if (o.pass)
    o.detail = "empirical SNR " + fmt("%.4f", snr) + " dB over 1e5 examples, unit power within " +
               fmt("%.2g", power_worst);
  return o;
}

Outcome gradients() {
  Outcome o;
  const auto r = gradcheck::worst_relative_error(2024, 100);
  o.require(r.worst < 1e-4, "worst relative error " + fmt("%.3g", r.worst));
  if (o.pass) o.detail = "worst relative error " + fmt("%.3g", r.worst) + " over 100 models";
  return o;
}

double best_val(const std::filesystem::path& history) {
  double best = 0.0;
  for (const auto& row : read_csv(history)) best = std::max(best, std::stod(row.at(2)));
  return best;
}

Outcome learning_sanity() {
  Outcome o;
  ScratchDir dir("acc_smoke");
  const int code = cli({"train", "--config", preset("preset-smoke.cfg").string(), "--out", (dir / "run").string()});
  o.require(code == 0, "train exited " + std::to_string(code));
  const double val = code == 0 ? best_val(dir / "run" / "history.csv") : 0.0;
  o.require(val >= 0.95, "smoke best validation accuracy " + fmt("%.4f", val) + " < 0.95");

  // Memorization: 32 smoke training examples, hidden 16, up to 200 epochs.
  const auto rc = RunConfig::from_kv(KeyValues::load(preset("preset-smoke.cfg")));
  auto split = generate_split(rc.manifest, Split::Train);
  SplitData small;
  small.n_classes = split.n_classes;
  small.signal_length = split.signal_length;
  CounterRng pick(32);
  shuffle<LabeledExample>(split.examples, pick);
  small.examples.assign(split.examples.begin(), split.examples.begin() + 32);
  TrainConfig cfg;
  cfg.batch_size = 8;
  cfg.epochs = 200;
  cfg.lr_min = 1e-3;
  cfg.lr_max = 1e-2;
  cfg.clip_norm = 1.0;
  cfg.seed = 5;
  std::size_t reached = 0;
  const std::vector<std::size_t> hidden{16};
  double train_acc = 0.0;
  try {
    const auto result = train(small, small, cfg, init_model<float>(small.n_classes, hidden, 5), [&](const EpochRecord& r) {
      if (reached == 0 && r.val_accuracy == 1.0) reached = r.epoch;
    });
    train_acc = accuracy(predict(result.best_model, small), small);
  } catch (const std::exception& e) {
    o.require(false, std::string("memorization threw: ") + e.what());
  }
  o.require(train_acc == 1.0, "memorization train accuracy " + fmt("%.4f", train_acc));
  const std::string mem = "memorization " + fmt("%.3f", train_acc) +
                          (reached ? " at epoch " + std::to_string(reached) : std::string());
  o.detail = (o.pass ? "" : o.detail + "; ") + "smoke best val " + fmt("%.4f", val) + ", " + mem;
  return o;
}

Outcome layer_ablation() {
  Outcome o;
  ScratchDir dir("acc_ablate");
  const int code = cli({"ablate-layers", "--config", preset("preset-ablation6.cfg").string(), "--out",
                        (dir / "run").string()});
  o.require(code == 0, "ablate-layers exited " + std::to_string(code));
  std::map<int, double> val;
  if (code == 0)
    for (const auto& row : read_csv(dir / "run" / "ablation_summary.csv")) val[std::stoi(row.at(0))] = std::stod(row.at(3));
  o.require(val.size() == 3, "expected 3 layer counts");
  const double v1 = val[1], v2 = val[2], v3 = val[3];
  o.require(v3 >= v2 - 0.02, "3-layer " + fmt("%.4f", v3) + " below 2-layer " + fmt("%.4f", v2) + " - 2pp");
  o.require(v2 >= v1 - 0.02, "2-layer " + fmt("%.4f", v2) + " below 1-layer " + fmt("%.4f", v1) + " - 2pp");
  o.detail = (o.pass ? "" : o.detail + "; ") + "best val 1/2/3 layers = " + fmt("%.4f", v1) + " / " +
             fmt("%.4f", v2) + " / " + fmt("%.4f", v3);
  return o;
}

Outcome metric_consistency() {
  Outcome o;
  SplitData split;
  split.n_classes = 5;
  split.signal_length = 1;
  float id = 0.0f;
  for (std::uint16_t c = 0; c < 5; ++c)
    for (int s : {-4, 0, 6, 12})
      for (int i = 0; i < 40; ++i) split.examples.push_back({{id++, 0.0f}, c, static_cast<std::int16_t>(s)});
  const auto preds = predictions_from(
      [](const LabeledExample& e) {
        CounterRng r(hash_seed({11, static_cast<std::uint64_t>(e.iq[0])}));
        const double p_right = 0.5 + 0.04 * e.snr_db;
        return r.uniform() < p_right ? std::size_t{e.class_index} : static_cast<std::size_t>(r.index(5));
      },
      split);
  const std::vector<std::string> names{"a", "b", "c", "d", "e"};
  const auto curves = accuracy_by_snr(preds, split, names);
  for (std::size_t i = 0; i < curves.overall.points.size(); ++i) {
    const auto& p = curves.overall.points[i];
    const auto cm = confusion_matrix(preds, split, p.snr_db, 5);
    o.require(static_cast<double>(cm.diagonal_sum()) / static_cast<double>(cm.total()) == p.accuracy,
              "diagonal/total differs at " + std::to_string(p.snr_db) + " dB");
    for (std::size_t c = 0; c < 5; ++c)
      o.require(static_cast<double>(cm.at(c, c)) / static_cast<double>(cm.row_sum(c)) ==
                    curves.per_class[c].points[i].accuracy,
                "per-class accuracy differs");
  }
  auto curve = [](std::vector<std::pair<int, double>> pts) {
    AccuracyCurve c;
    for (auto [s, a] : pts) c.points.push_back({s, a, 1});
    return c;
  };
  std::vector<std::pair<int, double>> a{{-2, 0.85}, {0, 0.91}, {2, 0.95}}, b, d{{-4, 0.92}, {-2, 0.88}, {0, 0.95}};
  for (int s = 4; s <= 20; s += 2) a.push_back({s, 0.96});
  for (int s = -12; s <= 20; s += 2) b.push_back({s, 0.8});
  for (int s = 2; s <= 20; s += 2) d.push_back({s, 0.93});
  o.require(sensitivity(curve(a)) == 0, "rising curve");
  o.require(!sensitivity(curve(b)).has_value(), "never-reaching curve");
  o.require(sensitivity(curve(d)) == 0, "dip curve");
  if (o.pass) o.detail = "diagonal/total equals accuracy at 4 SNRs; sensitivity cases 0 dB / absent / 0 dB";
  return o;
}

Outcome reproducibility() {
  Outcome o;
  const auto cfg = preset("preset-smoke.cfg").string();
  ScratchDir a("acc_rep_a"), b("acc_rep_b");
  for (const ScratchDir* d : {&a, &b}) {
    const auto data = (*d / "data").string(), model = (*d / "model").string(), eval = (*d / "eval").string();
    o.require(cli({"--threads", "1", "gen", "--config", cfg, "--out", data}) == 0, "gen failed");
    o.require(cli({"--threads", "1", "train", "--config", cfg, "--set", "epochs=3", "--data", data, "--out", model}) == 0,
              "train failed");
    o.require(cli({"--threads", "1", "eval", "--config", cfg, "--model", model + "/model.drlm", "--data", data, "--out",
                   eval}) == 0,
              "eval failed");
  }
  std::size_t compared = 0;
  for (const char* sub : {"data", "model", "eval"}) {
    for (const auto& entry : std::filesystem::directory_iterator(a / sub)) {
      const auto other = b / sub / entry.path().filename().string();
      o.require(std::filesystem::exists(other) && slurp(entry.path()) == slurp(other),
                "differs: " + std::string(sub) + "/" + entry.path().filename().string());
      ++compared;
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " files byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"parameter counts", parameter_counts},
      {"dataset totals", dataset_totals},
      {"code-sequence oracles", code_oracles},
      {"signal calibration", signal_calibration},
      {"gradient correctness", gradients},
      {"desk-scale learning", learning_sanity},
      {"layer ablation direction", layer_ablation},
      {"metric cross-consistency", metric_consistency},
      {"reproducibility", reproducibility},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    if (!wanted.empty() && !wanted.count(n)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%s) [%.1fs]\n", n, criteria[i].first, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
