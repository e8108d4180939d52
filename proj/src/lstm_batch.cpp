#include "drad/lstm_batch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "drad/errors.hpp"

#if defined(__SSE__)
#include <xmmintrin.h>
#endif

namespace drad {
namespace {

template <typename T>
T sigmoid(T z) {
  return T(1) / (T(1) + std::exp(-z));
}

// exp-based tanh; several times cheaper than std::tanh for float.
template <typename T>
T fast_tanh(T z) {
  return T(1) - T(2) / (T(1) + std::exp(T(2) * z));
}

template <typename T>
std::vector<T> transpose(const std::vector<T>& m, std::size_t rows, std::size_t cols) {
  std::vector<T> t(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t[c * rows + r] = m[r * cols + c];
  return t;
}

template <typename T>
void check_finite(std::span<const T> values, const std::string& where) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw NumericError("non-finite value in " + where);
  }
}

// Gradients shrink geometrically through long sequences and would otherwise
// reach the subnormal range, where x86 arithmetic is many times slower.
void flush_subnormals() {
#if defined(__SSE__)
#pragma omp parallel
  _mm_setcsr(_mm_getcsr() | 0x8040);  // FTZ | DAZ
#endif
}

}  // namespace

template <typename T>
LstmBatch<T>::LstmBatch(const Model<T>& model, Backend backend)
    : model_(model), k_(KernelSet<T>::select(backend)) {
  if (model.layers.empty()) throw std::invalid_argument("model has no layers");
  for (std::size_t l = 1; l < model.layers.size(); ++l) {
    if (model.layers[l].input_dim != model.layers[l - 1].hidden) {
      throw std::invalid_argument("layer " + std::to_string(l) + " input_dim does not match previous hidden");
    }
  }
  if (model.head_weights.size() != model.n_classes * model.hidden_last() ||
      model.head_bias.size() != model.n_classes) {
    throw std::invalid_argument("head shape mismatch");
  }
}

template <typename T>
const std::vector<T>& LstmBatch<T>::forward(std::span<const T> x, std::size_t batch, std::size_t steps) {
  const std::size_t in0 = model_.input_dim();
  if (batch == 0 || steps == 0 || x.size() != steps * batch * in0) {
    throw std::invalid_argument("LstmBatch::forward: input shape mismatch");
  }
  flush_subnormals();
  batch_ = batch;
  steps_ = steps;
  input_.assign(x.begin(), x.end());
  const std::size_t n_layers = model_.layers.size();
  wt_.resize(n_layers);
  gates_.resize(n_layers);
  cells_.resize(n_layers);
  acts_.resize(n_layers);
  tanh_c_.resize(n_layers);
  const bool par = k_.parallel;
  const auto nb = static_cast<std::int64_t>(batch);

  for (std::size_t l = 0; l < n_layers; ++l) {
    const auto& p = model_.layers[l];
    const std::size_t h = p.hidden;
    const std::size_t d = p.input_dim;
    const std::size_t g = 4 * h;
    wt_[l] = transpose(p.weights, g, p.row_width());
    const T* wt_a = wt_[l].data();
    const T* wt_x = wt_[l].data() + h * g;
    gates_[l].resize(steps * batch * g);
    cells_[l].resize(steps * batch * h);
    acts_[l].resize(steps * batch * h);
    const T* in = l == 0 ? input_.data() : acts_[l - 1].data();
    const bool swapped = model_.gating == Gating::Swapped;

    tanh_c_[l].resize(steps * batch * h);

    // Input projection and bias for every step in one product.
    T* z_all = gates_[l].data();
    for (std::size_t r = 0; r < steps * batch; ++r) std::copy(p.bias.begin(), p.bias.end(), z_all + r * g);
    k_.gemm_nn(steps * batch, d, g, in, d, wt_x, g, z_all, g);

    for (std::size_t t = 0; t < steps; ++t) {
      T* z = z_all + t * batch * g;
      if (t > 0) k_.gemm_nn(batch, h, g, acts_[l].data() + (t - 1) * batch * h, h, wt_a, g, z, g);

      T* c_out = cells_[l].data() + t * batch * h;
      T* tc_out = tanh_c_[l].data() + t * batch * h;
      T* a_out = acts_[l].data() + t * batch * h;
      const T* c_prev = t > 0 ? cells_[l].data() + (t - 1) * batch * h : nullptr;
#pragma omp parallel for schedule(static) if (par && batch * h > 4096)
      for (std::int64_t bi = 0; bi < nb; ++bi) {
        const auto b = static_cast<std::size_t>(bi);
        T* zb = z + b * g;
        for (std::size_t r = 0; r < h; ++r) {
          const T cand = fast_tanh(zb[r]);
          const T upd = sigmoid(zb[h + r]);
          const T fgt = sigmoid(zb[2 * h + r]);
          const T out = sigmoid(zb[3 * h + r]);
          const T cp = c_prev ? c_prev[b * h + r] : T(0);
          const T c = swapped ? fgt * cand + upd * cp : fgt * cp + upd * cand;
          const T tc = fast_tanh(c);
          zb[r] = cand;
          zb[h + r] = upd;
          zb[2 * h + r] = fgt;
          zb[3 * h + r] = out;
          c_out[b * h + r] = c;
          tc_out[b * h + r] = tc;
          a_out[b * h + r] = out * tc;
        }
      }
    }
    const auto& acts = acts_[l];
    for (std::size_t t = 0; t < steps; ++t) {
      const auto slice = std::span<const T>(acts).subspan(t * batch * h, batch * h);
      if (std::any_of(slice.begin(), slice.end(), [](T v) { return !std::isfinite(v); })) {
        throw NumericError("non-finite activation in layer " + std::to_string(l + 1) + " at step " +
                           std::to_string(t));
      }
    }
  }

  // Dense softmax head on the last activation of the top layer.
  const std::size_t h = model_.hidden_last();
  const std::size_t n = model_.n_classes;
  const T* a_last = acts_.back().data() + (steps - 1) * batch * h;
  probs_.resize(batch * n);
  for (std::size_t b = 0; b < batch; ++b) {
    T* row = probs_.data() + b * n;
    for (std::size_t k = 0; k < n; ++k) {
      T zk = model_.head_bias[k];
      for (std::size_t j = 0; j < h; ++j) zk += model_.head_weights[k * h + j] * a_last[b * h + j];
      row[k] = zk;
    }
    const T mx = *std::max_element(row, row + n);
    T sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = std::exp(row[k] - mx);
      sum += row[k];
    }
    for (std::size_t k = 0; k < n; ++k) row[k] /= sum;
  }
  check_finite<T>(probs_, "output probabilities");
  return probs_;
}

template <typename T>
T LstmBatch<T>::backward(std::span<const std::uint16_t> labels, Model<T>& grads, T scale) {
  const std::size_t batch = batch_;
  const std::size_t steps = steps_;
  if (labels.size() != batch) throw std::invalid_argument("LstmBatch::backward: label count mismatch");
  flush_subnormals();
  const std::size_t n = model_.n_classes;
  const std::size_t h_top = model_.hidden_last();
  const bool par = k_.parallel;
  const auto nb = static_cast<std::int64_t>(batch);

  T loss = 0;
  std::vector<T> dlogits(batch * n);
  for (std::size_t b = 0; b < batch; ++b) {
    if (labels[b] >= n) throw std::out_of_range("label out of range");
    const T* pb = probs_.data() + b * n;
    loss += -std::log(std::max(pb[labels[b]], static_cast<T>(1e-12)));
    for (std::size_t k = 0; k < n; ++k) {
      dlogits[b * n + k] = scale * (pb[k] - (k == labels[b] ? T(1) : T(0)));
    }
  }

  const T* a_last = acts_.back().data() + (steps - 1) * batch * h_top;
  k_.gemm_tn(n, batch, h_top, dlogits.data(), n, a_last, h_top, grads.head_weights.data(), h_top);
  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t k = 0; k < n; ++k) grads.head_bias[k] += dlogits[b * n + k];

  // Gradient w.r.t. the top layer's activations at the last step.
  std::vector<T> d_ext(batch * h_top, T(0));
  k_.gemm_nn(batch, n, h_top, dlogits.data(), n, model_.head_weights.data(), h_top, d_ext.data(), h_top);
  // For lower layers d_ext holds steps x batch x hidden gradients from above.
  bool ext_all_steps = false;

  const bool swapped = model_.gating == Gating::Swapped;
  for (std::size_t li = model_.layers.size(); li-- > 0;) {
    const auto& p = model_.layers[li];
    auto& gp = grads.layers[li];
    const std::size_t h = p.hidden;
    const std::size_t d = p.input_dim;
    const std::size_t g = 4 * h;
    const std::size_t kw = p.row_width();
    const T* in = li == 0 ? input_.data() : acts_[li - 1].data();
    const bool need_dx = li > 0;

    std::vector<T> d_rec(batch * h, T(0));
    std::vector<T> d_cell(batch * h, T(0));
    std::vector<T> dz_all(steps * batch * g);

    for (std::size_t t = steps; t-- > 0;) {
      const T* z = gates_[li].data() + t * batch * g;
      const T* tc_cur = tanh_c_[li].data() + t * batch * h;
      const T* c_prev = t > 0 ? cells_[li].data() + (t - 1) * batch * h : nullptr;
      T* dz = dz_all.data() + t * batch * g;
      const T* ext = nullptr;
      if (ext_all_steps) {
        ext = d_ext.data() + t * batch * h;
      } else if (t + 1 == steps) {
        ext = d_ext.data();
      }
#pragma omp parallel for schedule(static) if (par && batch * h > 4096)
      for (std::int64_t bi = 0; bi < nb; ++bi) {
        const auto b = static_cast<std::size_t>(bi);
        const T* zb = z + b * g;
        T* dzb = dz + b * g;
        for (std::size_t r = 0; r < h; ++r) {
          const T cand = zb[r];
          const T upd = zb[h + r];
          const T fgt = zb[2 * h + r];
          const T out = zb[3 * h + r];
          const T tc = tc_cur[b * h + r];
          const T cp = c_prev ? c_prev[b * h + r] : T(0);
          const T da = d_rec[b * h + r] + (ext ? ext[b * h + r] : T(0));
          const T dc = d_cell[b * h + r] + da * out * (T(1) - tc * tc);
          T d_cand, d_upd, d_fgt, dc_prev;
          if (swapped) {
            d_cand = dc * fgt;
            d_fgt = dc * cand;
            d_upd = dc * cp;
            dc_prev = dc * upd;
          } else {
            d_cand = dc * upd;
            d_upd = dc * cand;
            d_fgt = dc * cp;
            dc_prev = dc * fgt;
          }
          const T d_out = da * tc;
          dzb[r] = d_cand * (T(1) - cand * cand);
          dzb[h + r] = d_upd * upd * (T(1) - upd);
          dzb[2 * h + r] = d_fgt * fgt * (T(1) - fgt);
          dzb[3 * h + r] = d_out * out * (T(1) - out);
          d_cell[b * h + r] = dc_prev;
        }
      }
      if (t > 0) {
        std::fill(d_rec.begin(), d_rec.end(), T(0));
        k_.gemm_nn(batch, g, h, dz, g, p.weights.data(), kw, d_rec.data(), h);
      }
    }

    // Parameter gradients over all steps at once:
    //   dW[:, 0:h] += sum_t dz_t^T a_{t-1},  dW[:, h:] += sum_t dz_t^T x_t.
    if (steps > 1) {
      k_.gemm_tn(g, (steps - 1) * batch, h, dz_all.data() + batch * g, g, acts_[li].data(), h,
                 gp.weights.data(), kw);
    }
    k_.gemm_tn(g, steps * batch, d, dz_all.data(), g, in, d, gp.weights.data() + h, kw);
    for (std::size_t r = 0; r < steps * batch; ++r)
      for (std::size_t j = 0; j < g; ++j) gp.bias[j] += dz_all[r * g + j];

    std::vector<T> dx;
    if (need_dx) {
      dx.assign(steps * batch * d, T(0));
      k_.gemm_nn(steps * batch, g, d, dz_all.data(), g, p.weights.data() + h, kw, dx.data(), d);
    }
    if (need_dx) {
      d_ext = std::move(dx);
      ext_all_steps = true;
    }
  }

  std::size_t li = 0;
  for (const auto& l : grads.layers) {
    ++li;
    check_finite<T>(l.weights, "gradient of layer " + std::to_string(li) + " weights");
    check_finite<T>(l.bias, "gradient of layer " + std::to_string(li) + " bias");
  }
  check_finite<T>(grads.head_weights, "gradient of head weights");
  return loss;
}

template class LstmBatch<float>;
template class LstmBatch<double>;

}  // namespace drad
