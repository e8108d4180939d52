#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "drad/kernels.hpp"
#include "drad/lstm.hpp"

namespace drad {

/// Batched forward pass and backpropagation through time for a Model.
///
/// Inputs are time-major: x[t][b][d] for t < steps, b < batch, d < input_dim.
/// Forward caches every gate activation, memory cell and activation so that
/// backward() can run BPTT without recomputation. Per-example results do not
/// depend on the batch composition or the number of threads. On x86 the
/// calling thread and the OpenMP workers are switched to flush subnormal
/// floats to zero, and stay that way.
template <typename T>
class LstmBatch {
 public:
  LstmBatch(const Model<T>& model, Backend backend = Backend::OpenMP);

  /// Returns batch x n_classes probabilities (row-major). Throws NumericError
  /// naming the layer and step of the first non-finite activation.
  const std::vector<T>& forward(std::span<const T> x_time_major, std::size_t batch, std::size_t steps);

  /// Accumulates scale * d(sum of per-example losses)/d(params) into `grads`
  /// (same shapes as the model) and returns the summed loss of the batch.
  /// With scale = 1/N over N examples this is the mean-loss gradient.
  T backward(std::span<const std::uint16_t> labels, Model<T>& grads, T scale);

  const std::vector<T>& probabilities() const noexcept { return probs_; }

 private:
  const Model<T>& model_;
  KernelSet<T> k_;
  std::size_t batch_ = 0;
  std::size_t steps_ = 0;
  std::vector<T> input_;                      // steps x batch x input_dim
  std::vector<std::vector<T>> wt_;            // per layer: (hidden + input_dim) x 4 hidden
  std::vector<std::vector<T>> gates_;         // per layer: steps x batch x 4 hidden (activated)
  std::vector<std::vector<T>> cells_;         // per layer: steps x batch x hidden
  std::vector<std::vector<T>> acts_;          // per layer: steps x batch x hidden
  std::vector<std::vector<T>> tanh_c_;        // per layer: steps x batch x hidden
  std::vector<T> probs_;                      // batch x n_classes
};

/// Packs interleaved per-example sequences (steps x input_dim each) into the
/// time-major layout LstmBatch expects.
template <typename T, typename Source>
std::vector<T> pack_time_major(std::span<const Source* const> sequences, std::size_t steps,
                               std::size_t input_dim) {
  const std::size_t batch = sequences.size();
  std::vector<T> out(steps * batch * input_dim);
  for (std::size_t b = 0; b < batch; ++b) {
    const Source* src = sequences[b];
    for (std::size_t t = 0; t < steps; ++t)
      for (std::size_t d = 0; d < input_dim; ++d)
        out[(t * batch + b) * input_dim + d] = static_cast<T>(src[t * input_dim + d]);
  }
  return out;
}

}  // namespace drad
