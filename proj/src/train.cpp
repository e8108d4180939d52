#include "drad/train.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>

#include "drad/errors.hpp"
#include "drad/lstm_batch.hpp"
#include "drad/rng.hpp"

namespace drad {
namespace {

std::vector<float> pack(const SplitData& split, std::span<const std::size_t> idx, std::size_t input_dim) {
  std::vector<const float*> seqs;
  seqs.reserve(idx.size());
  for (std::size_t i : idx) seqs.push_back(split.examples[i].iq.data());
  return pack_time_major<float, float>(seqs, split.signal_length * 2 / input_dim, input_dim);
}

double grad_norm(const Model<float>& g) {
  double acc = 0.0;
  g.for_each_tensor([&](std::span<const float> t) {
    for (float v : t) acc += static_cast<double>(v) * v;
  });
  return std::sqrt(acc);
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size == 0) throw ConfigError("invalid value for 'batch_size': must be positive");
  if (micro_batch == 0) throw ConfigError("invalid value for 'micro_batch': must be positive");
  if (cycle_epochs == 0) throw ConfigError("invalid value for 'cycle_epochs': must be positive");
  if (!(lr_min > 0.0)) throw ConfigError("invalid value for 'lr_min': must be positive");
  if (!(lr_max > lr_min)) throw ConfigError("invalid value for 'lr_max': must exceed lr_min");
  if (!(adam.beta1 > 0.0 && adam.beta1 < 1.0)) throw ConfigError("invalid value for 'adam_beta1'");
  if (!(adam.beta2 > 0.0 && adam.beta2 < 1.0)) throw ConfigError("invalid value for 'adam_beta2'");
  if (!(adam.eps > 0.0)) throw ConfigError("invalid value for 'adam_eps'");
  if (clip_norm < 0.0) throw ConfigError("invalid value for 'clip_norm'");
}

std::vector<std::size_t> predict(const Model<float>& model, const SplitData& split, Backend backend,
                                 std::size_t chunk) {
  std::vector<std::size_t> out(split.examples.size());
  if (split.examples.empty()) return out;
  LstmBatch<float> engine(model, backend);
  const std::size_t d = model.input_dim();
  const std::size_t steps = split.signal_length * 2 / d;
  std::vector<std::size_t> idx;
  for (std::size_t first = 0; first < out.size(); first += chunk) {
    const std::size_t last = std::min(out.size(), first + chunk);
    idx.resize(last - first);
    std::iota(idx.begin(), idx.end(), first);
    const auto x = pack(split, idx, d);
    const auto& probs = engine.forward(x, idx.size(), steps);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      out[first + b] = argmax<float>(std::span<const float>(probs).subspan(b * model.n_classes, model.n_classes));
    }
  }
  return out;
}

double accuracy(const std::vector<std::size_t>& predictions, const SplitData& split) {
  if (split.examples.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == split.examples[i].class_index) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(split.examples.size());
}

TrainResult train(const SplitData& train_split, const SplitData& val_split, const TrainConfig& cfg,
                  Model<float> model, const EpochCallback& on_epoch) {
  cfg.validate();
  if (train_split.examples.empty()) throw DataError(DataError::Kind::Empty, "training split is empty");
  if (val_split.examples.empty()) throw DataError(DataError::Kind::Empty, "validation split is empty");
  if (train_split.n_classes > model.n_classes) {
    throw ConfigError("split has " + std::to_string(train_split.n_classes) + " classes but the model only " +
                      std::to_string(model.n_classes));
  }
  const std::size_t d = model.input_dim();
  if ((train_split.signal_length * 2) % d != 0) throw ConfigError("signal length does not match model input");
  const std::size_t steps = train_split.signal_length * 2 / d;

  const std::size_t n_train = train_split.examples.size();
  const std::size_t batch = std::min(cfg.batch_size, n_train);
  const auto steps_per_epoch = static_cast<std::int64_t>((n_train + batch - 1) / batch);

  TrainResult result;
  result.best_model = model;
  result.best_val_accuracy = -1.0;
  AdamState<float> adam(model);
  std::vector<std::size_t> order(n_train);
  std::iota(order.begin(), order.end(), 0);
  std::int64_t global_step = 0;
  double lr = cfg.lr_min;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    CounterRng shuffle_rng(hash_seed({cfg.seed, 0x5348554646ULL, epoch}));
    shuffle<std::size_t>(order, shuffle_rng);
    double loss_sum = 0.0;

    for (std::size_t first = 0; first < n_train; first += batch) {
      const std::size_t last = std::min(n_train, first + batch);
      const std::size_t bsz = last - first;
      auto grads = model.zeros_like();
      LstmBatch<float> engine(model, cfg.backend);
      const float scale = 1.0f / static_cast<float>(bsz);
      for (std::size_t mb = first; mb < last; mb += cfg.micro_batch) {
        const std::size_t mb_end = std::min(last, mb + cfg.micro_batch);
        const std::span<const std::size_t> idx(order.data() + mb, mb_end - mb);
        const auto x = pack(train_split, idx, d);
        std::vector<std::uint16_t> labels;
        for (std::size_t i : idx) labels.push_back(train_split.examples[i].class_index);
        engine.forward(x, idx.size(), steps);
        loss_sum += engine.backward(labels, grads, scale);
      }
      if (cfg.clip_norm > 0.0) {
        const double norm = grad_norm(grads);
        if (norm > cfg.clip_norm) {
          const auto s = static_cast<float>(cfg.clip_norm / norm);
          grads.for_each_tensor([&](std::span<float> t) {
            for (auto& v : t) v *= s;
          });
        }
      }
      lr = cyclical_lr(global_step, steps_per_epoch, static_cast<std::int64_t>(cfg.cycle_epochs), cfg.lr_min,
                       cfg.lr_max);
      adam_step(model, grads, adam, lr, cfg.adam);
      ++global_step;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(n_train);
    rec.val_accuracy = accuracy(predict(model, val_split, cfg.backend), val_split);
    rec.lr = lr;
    result.history.push_back(rec);
    if (rec.val_accuracy > result.best_val_accuracy) {
      result.best_val_accuracy = rec.val_accuracy;
      result.best_epoch = epoch;
      result.best_model = model;
    }
    if (on_epoch) on_epoch(rec);
  }
  if (result.best_val_accuracy < 0.0) result.best_val_accuracy = 0.0;
  result.model = std::move(model);
  return result;
}

void write_history_csv(const std::vector<EpochRecord>& history, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(DataError::Kind::Io, "cannot write '" + path.string() + "'");
  out << "epoch,train_loss,val_accuracy,lr\n";
  char line[160];
  for (const auto& r : history) {
    std::snprintf(line, sizeof line, "%zu,%.6f,%.6f,%.9g\n", r.epoch, r.train_loss, r.val_accuracy, r.lr);
    out << line;
  }
  if (!out) throw DataError(DataError::Kind::Io, "write failed for '" + path.string() + "'");
}

}  // namespace drad
