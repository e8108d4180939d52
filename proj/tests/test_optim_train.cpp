#include <doctest.h>

#include <cmath>
#include <numeric>

#include "drad/errors.hpp"
#include "drad/lstm_batch.hpp"
#include "drad/optim.hpp"
#include "drad/rng.hpp"
#include "drad/train.hpp"

using namespace drad;

namespace {

// Independent scalar Adam recurrence.
struct ScalarAdam {
  double m = 0.0, v = 0.0;
  int t = 0;
  double step(double p, double g, double lr, double b1 = 0.9, double b2 = 0.999, double eps = 1e-8) {
    ++t;
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g * g;
    const double mh = m / (1.0 - std::pow(b1, t));
    const double vh = v / (1.0 - std::pow(b2, t));
    return p - lr * mh / (std::sqrt(vh) + eps);
  }
};

// Random-valued split of short sequences so memorization runs quickly.
SplitData random_split(std::size_t n, std::uint16_t n_classes, std::uint32_t length, std::uint64_t seed) {
  SplitData s;
  s.n_classes = n_classes;
  s.signal_length = length;
  CounterRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    LabeledExample ex;
    ex.iq.resize(2 * length);
    for (auto& v : ex.iq) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    ex.class_index = static_cast<std::uint16_t>(i % n_classes);
    s.examples.push_back(std::move(ex));
  }
  return s;
}

}  // namespace

TEST_CASE("adam: three-step trace matches the hand recurrence") {
  std::vector<double> p{0.5}, m{0.0}, v{0.0};
  ScalarAdam ref;
  double expect = 0.5;
  const double grads[] = {0.3, -1.2, 0.05};
  for (int s = 0; s < 3; ++s) {
    std::vector<double> g{grads[s]};
    adam_update<double>(p, g, m, v, s + 1, 1e-2, AdamConfig{});
    expect = ref.step(expect, grads[s], 1e-2);
    CHECK(p[0] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("adam: first step moves by lr against the gradient sign") {
  for (double g : {1e-3, 0.7, -25.0}) {
    std::vector<double> p{1.0}, m{0.0}, v{0.0}, gv{g};
    adam_update<double>(p, gv, m, v, 1, 1e-3, AdamConfig{});
    CHECK(1.0 - p[0] == doctest::Approx(std::copysign(1e-3, g)).epsilon(1e-4));
  }
}

TEST_CASE("adam: zero gradient is a fixed point") {
  auto model = init_model<double>(3, std::vector<std::size_t>{4, 2}, 11);
  const auto before = model;
  AdamState<double> state(model);
  const auto zero = model.zeros_like();
  for (int i = 0; i < 5; ++i) adam_step(model, zero, state, 1e-2, AdamConfig{});
  CHECK(model == before);
  CHECK(state.step == 5);
}

TEST_CASE("cyclical learning rate endpoints and shape") {
  const std::int64_t spe = 10, cyc = 8;
  CHECK(cyclical_lr(0, spe, cyc, 1e-7, 1e-3) == doctest::Approx(1e-7).epsilon(1e-12));
  CHECK(cyclical_lr(40, spe, cyc, 1e-7, 1e-3) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(cyclical_lr(80, spe, cyc, 1e-7, 1e-3) == doctest::Approx(1e-7).epsilon(1e-12));
  CHECK(cyclical_lr(20, spe, cyc, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(cyclical_lr(60, spe, cyc, 0.0, 1.0) == doctest::Approx(0.5));
  for (std::int64_t s = 0; s < 400; ++s) {
    const double lr = cyclical_lr(s, spe, cyc, 1e-7, 1e-3);
    CHECK(lr >= 1e-7);
    CHECK(lr <= 1e-3);
    CHECK(lr == cyclical_lr(s + 80, spe, cyc, 1e-7, 1e-3));
  }
}

TEST_CASE("train config validation") {
  TrainConfig c;
  CHECK_NOTHROW(c.validate());
  c.lr_max = c.lr_min;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.adam.beta2 = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("batch gradient equals the mean of per-example gradients") {
  const auto model = init_model<double>(3, std::vector<std::size_t>{3, 2}, 5);
  const auto data = random_split(4, 3, 6, 77);
  const std::size_t steps = 6;
  std::vector<const float*> ptrs;
  std::vector<std::uint16_t> labels;
  for (const auto& ex : data.examples) {
    ptrs.push_back(ex.iq.data());
    labels.push_back(ex.class_index);
  }

  LstmBatch<double> whole(model, Backend::Serial);
  auto g_batch = model.zeros_like();
  whole.forward(pack_time_major<double, float>(ptrs, steps, 2), ptrs.size(), steps);
  whole.backward(labels, g_batch, 1.0 / 4.0);

  auto g_mean = model.zeros_like();
  for (std::size_t i = 0; i < ptrs.size(); ++i) {
    LstmBatch<double> one(model, Backend::Serial);
    auto g = model.zeros_like();
    const float* p[] = {ptrs[i]};
    one.forward(pack_time_major<double, float>(p, steps, 2), 1, steps);
    one.backward(std::span<const std::uint16_t>(&labels[i], 1), g, 1.0);
    std::vector<std::span<double>> dst;
    g_mean.for_each_tensor([&](std::span<double> t) { dst.push_back(t); });
    std::size_t k = 0;
    g.for_each_tensor([&](std::span<const double> t) {
      for (std::size_t j = 0; j < t.size(); ++j) dst[k][j] += t[j] / 4.0;
      ++k;
    });
  }

  std::vector<std::span<const double>> a, b;
  std::as_const(g_batch).for_each_tensor([&](std::span<const double> t) { a.push_back(t); });
  std::as_const(g_mean).for_each_tensor([&](std::span<const double> t) { b.push_back(t); });
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t j = 0; j < a[k].size(); ++j) CHECK(a[k][j] == doctest::Approx(b[k][j]).epsilon(1e-12));
}

TEST_CASE("all-zero model: head-bias gradient is uniform minus mean one-hot") {
  auto model = init_model<double>(4, std::vector<std::size_t>{2}, 1).zeros_like();
  const auto data = random_split(6, 4, 5, 3);
  std::vector<const float*> ptrs;
  std::vector<std::uint16_t> labels;
  for (const auto& ex : data.examples) {
    ptrs.push_back(ex.iq.data());
    labels.push_back(ex.class_index);
  }
  LstmBatch<double> eng(model, Backend::Serial);
  auto g = model.zeros_like();
  eng.forward(pack_time_major<double, float>(ptrs, 5, 2), 6, 5);
  eng.backward(labels, g, 1.0 / 6.0);
  std::vector<double> mean_onehot(4, 0.0);
  for (auto l : labels) mean_onehot[l] += 1.0 / 6.0;
  for (std::size_t c = 0; c < 4; ++c) CHECK(g.head_bias[c] == doctest::Approx(0.25 - mean_onehot[c]).epsilon(1e-12));
}

TEST_CASE("32-example memorization reaches 100% training accuracy within 200 epochs") {
  const auto data = random_split(32, 4, 12, 2024);
  TrainConfig cfg;
  cfg.batch_size = 8;
  cfg.epochs = 200;
  cfg.lr_min = 1e-3;
  cfg.lr_max = 2e-2;
  cfg.cycle_epochs = 8;
  cfg.seed = 3;
  std::size_t reached = 0;
  auto model = init_model<float>(4, std::vector<std::size_t>{16}, 9);
  const auto result = train(data, data, cfg, model, [&](const EpochRecord& r) {
    if (reached == 0 && r.val_accuracy == 1.0) reached = r.epoch;
  });
  CHECK(result.history.size() == 200);
  CHECK(result.best_val_accuracy == 1.0);
  CHECK(reached > 0);
  CHECK(accuracy(predict(result.best_model, data), data) == 1.0);

  // Epoch-averaged loss trends down: each 40-epoch window beats the first.
  auto window = [&](std::size_t from) {
    double s = 0.0;
    for (std::size_t e = from; e < from + 40; ++e) s += result.history[e].train_loss;
    return s / 40.0;
  };
  for (std::size_t w = 40; w < 200; w += 40) CHECK(window(w) < window(0));
  for (const auto& r : result.history) CHECK(std::isfinite(r.train_loss));
}

TEST_CASE("training is deterministic for a fixed seed, across backends") {
  const auto data = random_split(20, 3, 8, 12);
  const auto val = random_split(9, 3, 8, 13);
  TrainConfig cfg;
  cfg.batch_size = 6;
  cfg.epochs = 4;
  cfg.lr_min = 1e-4;
  cfg.lr_max = 1e-2;
  cfg.seed = 42;
  const auto model = init_model<float>(3, std::vector<std::size_t>{5, 4}, 1);
  const auto a = train(data, val, cfg, model);
  const auto b = train(data, val, cfg, model);
  cfg.backend = Backend::Serial;
  const auto c = train(data, val, cfg, model);
  CHECK(a.history.size() == 4);
  CHECK(a.model == b.model);
  CHECK(a.model == c.model);
  for (std::size_t e = 0; e < 4; ++e) {
    CHECK(a.history[e].train_loss == b.history[e].train_loss);
    CHECK(a.history[e].val_accuracy == b.history[e].val_accuracy);
    CHECK(a.history[e].lr == b.history[e].lr);
    CHECK(a.history[e].epoch == e + 1);
  }
  cfg.backend = Backend::OpenMP;
  cfg.seed = 43;
  CHECK_FALSE(train(data, val, cfg, model).model == a.model);
}

TEST_CASE("train rejects empty splits and class mismatch") {
  const auto data = random_split(6, 3, 4, 1);
  SplitData empty = data;
  empty.examples.clear();
  TrainConfig cfg;
  cfg.epochs = 1;
  const auto model = init_model<float>(3, std::vector<std::size_t>{2}, 1);
  CHECK_THROWS_AS(train(empty, data, cfg, model), DataError);
  CHECK_THROWS_AS(train(data, empty, cfg, model), DataError);
  const auto small = init_model<float>(2, std::vector<std::size_t>{2}, 1);
  CHECK_THROWS_AS(train(data, data, cfg, small), ConfigError);
}
