#include "drad/optim.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace drad {

template <typename T>
void adam_update(std::span<T> params, std::span<const T> grads, std::span<T> m, std::span<T> v,
                 std::int64_t step, double lr, const AdamConfig& cfg) {
  if (grads.size() != params.size() || m.size() != params.size() || v.size() != params.size()) {
    throw std::invalid_argument("adam_update: shape mismatch");
  }
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
  const T b1 = static_cast<T>(cfg.beta1);
  const T b2 = static_cast<T>(cfg.beta2);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const T g = grads[i];
    m[i] = b1 * m[i] + (T(1) - b1) * g;
    v[i] = b2 * v[i] + (T(1) - b2) * g * g;
    const double m_hat = static_cast<double>(m[i]) / bc1;
    const double v_hat = static_cast<double>(v[i]) / bc2;
    params[i] -= static_cast<T>(lr * m_hat / (std::sqrt(v_hat) + cfg.eps));
  }
}

template <typename T>
void adam_step(Model<T>& params, const Model<T>& grads, AdamState<T>& state, double lr,
               const AdamConfig& cfg) {
  ++state.step;
  std::vector<std::span<T>> p, m, v;
  std::vector<std::span<const T>> g;
  params.for_each_tensor([&](std::span<T> t) { p.push_back(t); });
  state.m.for_each_tensor([&](std::span<T> t) { m.push_back(t); });
  state.v.for_each_tensor([&](std::span<T> t) { v.push_back(t); });
  grads.for_each_tensor([&](std::span<const T> t) { g.push_back(t); });
  if (g.size() != p.size()) throw std::invalid_argument("adam_step: model shape mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) adam_update<T>(p[i], g[i], m[i], v[i], state.step, lr, cfg);
}

double cyclical_lr(std::int64_t global_step, std::int64_t steps_per_epoch, std::int64_t cycle_epochs,
                   double lr_min, double lr_max) {
  const std::int64_t period = std::max<std::int64_t>(1, steps_per_epoch * cycle_epochs);
  const double x = static_cast<double>(global_step % period) / static_cast<double>(period);
  const double tri = 1.0 - std::abs(2.0 * x - 1.0);
  return lr_min + (lr_max - lr_min) * tri;
}

template void adam_update<float>(std::span<float>, std::span<const float>, std::span<float>,
                                 std::span<float>, std::int64_t, double, const AdamConfig&);
template void adam_update<double>(std::span<double>, std::span<const double>, std::span<double>,
                                  std::span<double>, std::int64_t, double, const AdamConfig&);
template void adam_step<float>(Model<float>&, const Model<float>&, AdamState<float>&, double,
                               const AdamConfig&);
template void adam_step<double>(Model<double>&, const Model<double>&, AdamState<double>&, double,
                                const AdamConfig&);

}  // namespace drad
