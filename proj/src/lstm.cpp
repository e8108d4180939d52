#include "drad/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "drad/rng.hpp"

namespace drad {
namespace {

template <typename T>
T sigmoid(T z) {
  return T(1) / (T(1) + std::exp(-z));
}

}  // namespace

template <typename T>
LstmLayerParams<T>::LstmLayerParams(std::size_t in, std::size_t h)
    : input_dim(in), hidden(h), weights(4 * h * (h + in), T(0)), bias(4 * h, T(0)) {}

template <typename T>
Model<T> Model<T>::zeros_like() const {
  Model z = *this;
  z.for_each_tensor([](std::span<T> t) { std::fill(t.begin(), t.end(), T(0)); });
  return z;
}

template <typename T>
template <typename U>
Model<U> Model<T>::cast() const {
  Model<U> out;
  out.n_classes = n_classes;
  out.gating = gating;
  for (const auto& l : layers) {
    LstmLayerParams<U> p(l.input_dim, l.hidden);
    std::transform(l.weights.begin(), l.weights.end(), p.weights.begin(), [](T v) { return static_cast<U>(v); });
    std::transform(l.bias.begin(), l.bias.end(), p.bias.begin(), [](T v) { return static_cast<U>(v); });
    out.layers.push_back(std::move(p));
  }
  out.head_weights.assign(head_weights.begin(), head_weights.end());
  out.head_bias.assign(head_bias.begin(), head_bias.end());
  return out;
}

ParamCount count_params(std::size_t input_dim, std::span<const std::size_t> hidden_sizes,
                        std::size_t n_classes) noexcept {
  ParamCount pc;
  std::size_t d = input_dim;
  for (std::size_t h : hidden_sizes) {
    pc.lstm += 4 * h * (d + h + 1);
    d = h;
  }
  if (!hidden_sizes.empty()) pc.head = hidden_sizes.back() * n_classes + n_classes;
  return pc;
}

template <typename T>
ParamCount count_params(const Model<T>& model) noexcept {
  std::vector<std::size_t> sizes;
  for (const auto& l : model.layers) sizes.push_back(l.hidden);
  return count_params(model.input_dim(), sizes, model.n_classes);
}

template <typename T>
Model<T> init_model(std::size_t n_classes, std::span<const std::size_t> hidden_sizes,
                    std::uint64_t seed, std::size_t input_dim, Gating gating) {
  if (n_classes == 0 || hidden_sizes.empty() || input_dim == 0) {
    throw std::invalid_argument("model sizes must be positive");
  }
  CounterRng rng(seed);
  Model<T> m;
  m.n_classes = n_classes;
  m.gating = gating;
  std::size_t d = input_dim;
  for (std::size_t h : hidden_sizes) {
    if (h == 0) throw std::invalid_argument("hidden size must be positive");
    LstmLayerParams<T> p(d, h);
    const double limit = std::sqrt(6.0 / static_cast<double>(d + h + h));
    for (auto& w : p.weights) w = static_cast<T>(rng.uniform(-limit, limit));
    auto fb = p.gate_bias(Gate::Forget);
    std::fill(fb.begin(), fb.end(), T(1));
    m.layers.push_back(std::move(p));
    d = h;
  }
  m.head_weights.resize(n_classes * d);
  m.head_bias.assign(n_classes, T(0));
  const double limit = std::sqrt(6.0 / static_cast<double>(d + n_classes));
  for (auto& w : m.head_weights) w = static_cast<T>(rng.uniform(-limit, limit));
  return m;
}

template <typename T>
CellStep<T> lstm_cell_forward(std::span<const T> x, const CellState<T>& prev,
                              const LstmLayerParams<T>& p, Gating gating) {
  const std::size_t h = p.hidden;
  if (x.size() != p.input_dim || prev.a.size() != h || prev.c.size() != h ||
      p.weights.size() != 4 * h * p.row_width() || p.bias.size() != 4 * h) {
    throw std::invalid_argument("lstm_cell_forward: dimension mismatch");
  }
  const std::size_t k = p.row_width();
  CellStep<T> step;
  auto& cache = step.cache;
  cache.x.assign(x.begin(), x.end());
  cache.a_prev = prev.a;
  cache.c_prev = prev.c;
  cache.candidate.resize(h);
  cache.update.resize(h);
  cache.forget.resize(h);
  cache.output.resize(h);
  cache.c.resize(h);
  step.state = CellState<T>::zeros(h);

  // z = W_g [a_prev, x] + b_g for gate row r of block g.
  const auto preact = [&](Gate g, std::size_t r) {
    const T* row = p.gate_weights(g).data() + r * k;
    T z = p.gate_bias(g)[r];
    for (std::size_t j = 0; j < h; ++j) z += row[j] * prev.a[j];
    for (std::size_t j = 0; j < p.input_dim; ++j) z += row[h + j] * x[j];
    return z;
  };
  for (std::size_t r = 0; r < h; ++r) {
    const T cand = std::tanh(preact(Gate::Candidate, r));
    const T upd = sigmoid(preact(Gate::Update, r));
    const T fgt = sigmoid(preact(Gate::Forget, r));
    const T out = sigmoid(preact(Gate::Output, r));
    const T c = gating == Gating::Standard ? fgt * prev.c[r] + upd * cand
                                           : fgt * cand + upd * prev.c[r];
    cache.candidate[r] = cand;
    cache.update[r] = upd;
    cache.forget[r] = fgt;
    cache.output[r] = out;
    cache.c[r] = c;
    step.state.c[r] = c;
    step.state.a[r] = out * std::tanh(c);
  }
  return step;
}

template <typename T>
std::vector<T> lstm_layer_forward(std::span<const T> seq, std::size_t steps,
                                  const LstmLayerParams<T>& p, bool return_sequences, Gating gating) {
  if (steps == 0 || seq.size() != steps * p.input_dim) {
    throw std::invalid_argument("lstm_layer_forward: sequence shape mismatch");
  }
  auto state = CellState<T>::zeros(p.hidden);
  std::vector<T> out;
  out.reserve(return_sequences ? steps * p.hidden : p.hidden);
  for (std::size_t t = 0; t < steps; ++t) {
    state = lstm_cell_forward(seq.subspan(t * p.input_dim, p.input_dim), state, p, gating).state;
    if (return_sequences) out.insert(out.end(), state.a.begin(), state.a.end());
  }
  if (!return_sequences) out = state.a;
  return out;
}

template <typename T>
std::vector<T> softmax(std::span<const T> logits) {
  std::vector<T> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const T mx = *std::max_element(p.begin(), p.end());
  T sum = 0;
  for (auto& v : p) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return p;
}

template <typename T>
std::vector<T> model_forward(std::span<const T> seq, const Model<T>& model) {
  if (model.layers.empty() || seq.empty() || seq.size() % model.input_dim() != 0) {
    throw std::invalid_argument("model_forward: input shape mismatch");
  }
  const std::size_t steps = seq.size() / model.input_dim();
  std::vector<T> act(seq.begin(), seq.end());
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const bool last = l + 1 == model.layers.size();
    act = lstm_layer_forward<T>(act, steps, model.layers[l], !last, model.gating);
  }
  const std::size_t h = model.hidden_last();
  std::vector<T> logits(model.n_classes);
  for (std::size_t k = 0; k < model.n_classes; ++k) {
    T z = model.head_bias[k];
    for (std::size_t j = 0; j < h; ++j) z += model.head_weights[k * h + j] * act[j];
    logits[k] = z;
  }
  return softmax<T>(logits);
}

template <typename T>
T cross_entropy_loss(std::span<const T> probs, std::size_t label) {
  if (label >= probs.size()) throw std::out_of_range("label " + std::to_string(label) + " out of range");
  return -std::log(std::max(probs[label], static_cast<T>(1e-12)));
}

template <typename T>
std::vector<T> cross_entropy_logit_grad(std::span<const T> probs, std::size_t label) {
  if (label >= probs.size()) throw std::out_of_range("label " + std::to_string(label) + " out of range");
  std::vector<T> g(probs.begin(), probs.end());
  g[label] -= T(1);
  return g;
}

template <typename T>
std::size_t argmax(std::span<const T> values) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

#define DRAD_INSTANTIATE(T)                                                                       \
  template struct LstmLayerParams<T>;                                                             \
  template struct Model<T>;                                                                       \
  template ParamCount count_params<T>(const Model<T>&) noexcept;                                  \
  template Model<T> init_model<T>(std::size_t, std::span<const std::size_t>, std::uint64_t,       \
                                  std::size_t, Gating);                                           \
  template CellStep<T> lstm_cell_forward<T>(std::span<const T>, const CellState<T>&,              \
                                            const LstmLayerParams<T>&, Gating);                   \
  template std::vector<T> lstm_layer_forward<T>(std::span<const T>, std::size_t,                  \
                                                const LstmLayerParams<T>&, bool, Gating);         \
  template std::vector<T> softmax<T>(std::span<const T>);                                         \
  template std::vector<T> model_forward<T>(std::span<const T>, const Model<T>&);                  \
  template T cross_entropy_loss<T>(std::span<const T>, std::size_t);                              \
  template std::vector<T> cross_entropy_logit_grad<T>(std::span<const T>, std::size_t);           \
  template std::size_t argmax<T>(std::span<const T>) noexcept;

DRAD_INSTANTIATE(float)
DRAD_INSTANTIATE(double)
#undef DRAD_INSTANTIATE

template Model<double> Model<float>::cast<double>() const;
template Model<float> Model<double>::cast<float>() const;
template Model<float> Model<float>::cast<float>() const;
template Model<double> Model<double>::cast<double>() const;

}  // namespace drad
