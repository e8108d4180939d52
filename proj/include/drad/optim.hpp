#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "drad/lstm.hpp"

namespace drad {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// In-place Adam update of one tensor with bias correction; `step` is the
/// 1-based update count.
///   m = b1 m + (1 - b1) g,  v = b2 v + (1 - b2) g^2
///   p -= lr * (m / (1 - b1^step)) / (sqrt(v / (1 - b2^step)) + eps)
template <typename T>
void adam_update(std::span<T> params, std::span<const T> grads, std::span<T> m, std::span<T> v,
                 std::int64_t step, double lr, const AdamConfig& cfg);

/// First and second moments for every tensor of a model.
template <typename T>
struct AdamState {
  Model<T> m;
  Model<T> v;
  std::int64_t step = 0;

  explicit AdamState(const Model<T>& like) : m(like.zeros_like()), v(like.zeros_like()) {}
};

template <typename T>
void adam_step(Model<T>& params, const Model<T>& grads, AdamState<T>& state, double lr,
               const AdamConfig& cfg);

/// Triangular cyclical schedule with period cycle_epochs * steps_per_epoch:
/// lr_min at step 0, lr_max at half period, lr_min again at the full period.
double cyclical_lr(std::int64_t global_step, std::int64_t steps_per_epoch, std::int64_t cycle_epochs,
                   double lr_min, double lr_max);

}  // namespace drad
