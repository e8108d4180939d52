#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace drad {

/// Gate blocks inside a layer's fused weight matrix, in storage order.
enum class Gate : std::size_t { Candidate = 0, Update = 1, Forget = 2, Output = 3 };

/// How the memory cell combines its inputs.
///   Standard:  c = f * c_prev + i * c~
///   Swapped:   c = f * c~ + i * c_prev   (the alternative gate pairing)
/// where f = sigmoid(W_f [a, x] + b_f) and i = sigmoid(W_u [a, x] + b_u).
enum class Gating : std::uint8_t { Standard = 0, Swapped = 1 };

/// One LSTM layer. `weights` is (4 hidden) x (hidden + input_dim), row-major,
/// gate blocks in Gate order; columns [0, hidden) multiply a<t-1> and
/// columns [hidden, hidden + input_dim) multiply x<t>.
template <typename T>
struct LstmLayerParams {
  std::size_t input_dim = 0;
  std::size_t hidden = 0;
  std::vector<T> weights;
  std::vector<T> bias;

  LstmLayerParams() = default;
  LstmLayerParams(std::size_t input_dim, std::size_t hidden);

  std::size_t row_width() const noexcept { return hidden + input_dim; }
  std::size_t gate_rows() const noexcept { return 4 * hidden; }

  std::span<T> gate_weights(Gate g) noexcept {
    return {weights.data() + static_cast<std::size_t>(g) * hidden * row_width(), hidden * row_width()};
  }
  std::span<const T> gate_weights(Gate g) const noexcept {
    return {weights.data() + static_cast<std::size_t>(g) * hidden * row_width(), hidden * row_width()};
  }
  std::span<T> gate_bias(Gate g) noexcept {
    return {bias.data() + static_cast<std::size_t>(g) * hidden, hidden};
  }
  std::span<const T> gate_bias(Gate g) const noexcept {
    return {bias.data() + static_cast<std::size_t>(g) * hidden, hidden};
  }

  friend bool operator==(const LstmLayerParams&, const LstmLayerParams&) = default;
};

/// Stacked LSTM layers followed by a dense softmax head on the last layer's
/// final activation.
template <typename T>
struct Model {
  std::vector<LstmLayerParams<T>> layers;
  std::vector<T> head_weights;  ///< n_classes x hidden_last
  std::vector<T> head_bias;     ///< n_classes
  std::size_t n_classes = 0;
  Gating gating = Gating::Standard;

  std::size_t input_dim() const noexcept { return layers.empty() ? 0 : layers.front().input_dim; }
  std::size_t hidden_last() const noexcept { return layers.empty() ? 0 : layers.back().hidden; }

  /// Same shapes, all values zero.
  Model zeros_like() const;

  /// Visits every parameter tensor in checkpoint order: per layer weights
  /// then bias, then head weights, head bias.
  template <typename F>
  void for_each_tensor(F&& f) {
    for (auto& l : layers) {
      f(std::span<T>(l.weights));
      f(std::span<T>(l.bias));
    }
    f(std::span<T>(head_weights));
    f(std::span<T>(head_bias));
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    for (const auto& l : layers) {
      f(std::span<const T>(l.weights));
      f(std::span<const T>(l.bias));
    }
    f(std::span<const T>(head_weights));
    f(std::span<const T>(head_bias));
  }

  template <typename U>
  Model<U> cast() const;

  friend bool operator==(const Model&, const Model&) = default;
};

struct ParamCount {
  std::size_t lstm = 0;
  std::size_t head = 0;
  std::size_t total() const noexcept { return lstm + head; }
};

/// LSTM: sum over layers of 4 h (d + h + 1); head: h_last n + n.
template <typename T>
ParamCount count_params(const Model<T>& model) noexcept;

/// Shape-only count for a stack with the given hidden sizes.
ParamCount count_params(std::size_t input_dim, std::span<const std::size_t> hidden_sizes,
                        std::size_t n_classes) noexcept;

/// Glorot-uniform gate and head matrices (limit sqrt(6 / (fan_in + fan_out))
/// per gate matrix), forget bias 1, every other bias 0.
template <typename T>
Model<T> init_model(std::size_t n_classes, std::span<const std::size_t> hidden_sizes,
                    std::uint64_t seed, std::size_t input_dim = 2, Gating gating = Gating::Standard);

template <typename T>
struct CellState {
  std::vector<T> a;
  std::vector<T> c;

  static CellState zeros(std::size_t hidden) { return {std::vector<T>(hidden), std::vector<T>(hidden)}; }
};

/// Everything one backward step needs.
template <typename T>
struct CellCache {
  std::vector<T> x;
  std::vector<T> a_prev;
  std::vector<T> c_prev;
  std::vector<T> candidate;
  std::vector<T> update;
  std::vector<T> forget;
  std::vector<T> output;
  std::vector<T> c;
};

template <typename T>
struct CellStep {
  CellState<T> state;
  CellCache<T> cache;
};

/// One time step for a single sequence. Throws std::invalid_argument on
/// dimension mismatch.
template <typename T>
CellStep<T> lstm_cell_forward(std::span<const T> x, const CellState<T>& prev,
                              const LstmLayerParams<T>& params, Gating gating = Gating::Standard);

/// Runs a layer over `seq` (steps x input_dim, row-major) from a zero state.
/// Returns steps x hidden activations, or only the last one.
template <typename T>
std::vector<T> lstm_layer_forward(std::span<const T> seq, std::size_t steps,
                                  const LstmLayerParams<T>& params, bool return_sequences,
                                  Gating gating = Gating::Standard);

/// Numerically stable softmax.
template <typename T>
std::vector<T> softmax(std::span<const T> logits);

/// Class probabilities for one sequence of `steps` x input_dim values
/// (interleaved I/Q for the radar model). Reference path, one cell at a time.
template <typename T>
std::vector<T> model_forward(std::span<const T> seq, const Model<T>& model);

/// -log(max(probs[label], 1e-12)). Throws std::out_of_range for a bad label.
template <typename T>
T cross_entropy_loss(std::span<const T> probs, std::size_t label);

/// d loss / d logits = probs - one_hot(label).
template <typename T>
std::vector<T> cross_entropy_logit_grad(std::span<const T> probs, std::size_t label);

/// Index of the largest probability; ties go to the lowest index.
template <typename T>
std::size_t argmax(std::span<const T> values) noexcept;

}  // namespace drad
