#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "drad/dataset.hpp"
#include "drad/kernels.hpp"
#include "drad/lstm.hpp"
#include "drad/optim.hpp"

namespace drad {

struct TrainConfig {
  std::size_t batch_size = 256;
  std::size_t epochs = 300;
  double lr_min = 1e-7;
  double lr_max = 1e-3;
  std::size_t cycle_epochs = 8;
  AdamConfig adam;
  std::uint64_t seed = 0;
  /// Largest number of sequences pushed through BPTT at once; a batch is
  /// processed in chunks and its gradients summed in chunk order.
  std::size_t micro_batch = 32;
  /// Global gradient-norm clip; 0 disables.
  double clip_norm = 0.0;
  Backend backend = Backend::OpenMP;

  /// Throws ConfigError on invalid settings.
  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  ///< 1-based
  double train_loss = 0.0;
  double val_accuracy = 0.0;
  double lr = 0.0;
};

struct TrainResult {
  Model<float> model;       ///< parameters after the last epoch
  Model<float> best_model;  ///< highest validation accuracy (earliest on ties)
  std::size_t best_epoch = 0;
  double best_val_accuracy = 0.0;
  std::vector<EpochRecord> history;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Mini-batch Adam training with a cyclical learning rate. Batches are drawn
/// from a seeded shuffle of the training split every epoch.
TrainResult train(const SplitData& train_split, const SplitData& val_split, const TrainConfig& config,
                  Model<float> model, const EpochCallback& on_epoch = {});

/// Argmax predictions (ties to the lowest index) for every example.
std::vector<std::size_t> predict(const Model<float>& model, const SplitData& split,
                                 Backend backend = Backend::OpenMP, std::size_t chunk = 64);

/// Fraction of examples whose prediction equals the label.
double accuracy(const std::vector<std::size_t>& predictions, const SplitData& split);

/// History CSV: epoch,train_loss,val_accuracy,lr
void write_history_csv(const std::vector<EpochRecord>& history, const std::filesystem::path& path);

}  // namespace drad
